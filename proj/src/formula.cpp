#include "fmcorr/formula.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fmcorr {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind k, Identifier name, const Formula* l, const Formula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  std::size_t h = mix(0, static_cast<std::size_t>(k));
  if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
  if (l) {
    n->left = std::make_unique<Formula>(*l);
    h = mix(h, l->hash());
  }
  if (r) {
    n->right = std::make_unique<Formula>(*r);
    h = mix(h, r->hash());
  }
  n->name = std::move(name);
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::var(Identifier name) { return make(Kind::Var, std::move(name), nullptr, nullptr); }
Formula Formula::nominal(Identifier name) {
  return make(Kind::Nominal, std::move(name), nullptr, nullptr);
}
Formula Formula::bot() {
  static const Formula f = make(Kind::Bot, {}, nullptr, nullptr);
  return f;
}
Formula Formula::top() {
  static const Formula f = make(Kind::Top, {}, nullptr, nullptr);
  return f;
}
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, {}, &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, {}, &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Kind::Implies, {}, &a, &b); }
Formula Formula::box(Formula a) { return make(Kind::Box, {}, &a, nullptr); }
Formula Formula::black_diamond(Formula a) { return make(Kind::BlackDiamond, {}, &a, nullptr); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Var:
    case Kind::Nominal:
      return a.name() == b.name();
    case Kind::Bot:
    case Kind::Top:
      return true;
    case Kind::Box:
    case Kind::BlackDiamond:
      return a.child() == b.child();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Kind::Var:
    case Kind::Nominal:
      return a.name() < b.name();
    case Kind::Bot:
    case Kind::Top:
      return false;
    case Kind::Box:
    case Kind::BlackDiamond:
      return a.child() < b.child();
    default:
      if (a.left() != b.left()) return a.left() < b.left();
      return a.right() < b.right();
  }
}

Polarity join(Polarity a, Polarity b) {
  if (a == Polarity::None) return b;
  if (b == Polarity::None) return a;
  return a == b ? a : Polarity::Both;
}

Polarity flip(Polarity p) {
  switch (p) {
    case Polarity::Positive:
      return Polarity::Negative;
    case Polarity::Negative:
      return Polarity::Positive;
    default:
      return p;
  }
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::None:
      return "none";
    case Polarity::Positive:
      return "positive";
    case Polarity::Negative:
      return "negative";
    case Polarity::Both:
      return "both";
  }
  return "?";
}

Polarity polarity(const Formula& f, const Identifier& p) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == p ? Polarity::Positive : Polarity::None;
    case Kind::Bot:
    case Kind::Top:
    case Kind::Nominal:
      return Polarity::None;
    case Kind::Box:
    case Kind::BlackDiamond:
      return polarity(f.child(), p);
    case Kind::Implies:
      return join(flip(polarity(f.left(), p)), polarity(f.right(), p));
    case Kind::And:
    case Kind::Or:
      return join(polarity(f.left(), p), polarity(f.right(), p));
  }
  return Polarity::None;
}

Formula substitute(const Formula& f, const Identifier& p, const Formula& theta) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == p ? theta : f;
    case Kind::Bot:
    case Kind::Top:
    case Kind::Nominal:
      return f;
    case Kind::Box:
      return Formula::box(substitute(f.child(), p, theta));
    case Kind::BlackDiamond:
      return Formula::black_diamond(substitute(f.child(), p, theta));
    case Kind::And:
      return Formula::conj(substitute(f.left(), p, theta), substitute(f.right(), p, theta));
    case Kind::Or:
      return Formula::disj(substitute(f.left(), p, theta), substitute(f.right(), p, theta));
    case Kind::Implies:
      return Formula::implies(substitute(f.left(), p, theta), substitute(f.right(), p, theta));
  }
  return f;
}

Inequality substitute(const Inequality& ineq, const Identifier& p, const Formula& theta) {
  return {substitute(ineq.lhs, p, theta), substitute(ineq.rhs, p, theta)};
}

QuasiInequality substitute(const QuasiInequality& q, const Identifier& p, const Formula& theta) {
  QuasiInequality out{{}, substitute(q.consequent, p, theta)};
  out.antecedents.reserve(q.antecedents.size());
  for (const auto& a : q.antecedents) out.antecedents.push_back(substitute(a, p, theta));
  return out;
}

Identifier fresh_nominal(const IdentifierSet& used) {
  for (std::size_t k = 0;; ++k) {
    Identifier candidate = "i" + std::to_string(k);
    if (!used.contains(candidate)) return candidate;
  }
}

void collect_variables(const Formula& f, IdentifierSet& out) {
  if (f.is(Kind::Var)) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    collect_variables(f.child(), out);
  } else if (f.is_binary()) {
    collect_variables(f.left(), out);
    collect_variables(f.right(), out);
  }
}

void collect_nominals(const Formula& f, IdentifierSet& out) {
  if (f.is(Kind::Nominal)) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    collect_nominals(f.child(), out);
  } else if (f.is_binary()) {
    collect_nominals(f.left(), out);
    collect_nominals(f.right(), out);
  }
}

IdentifierSet variables(const Formula& f) {
  IdentifierSet s;
  collect_variables(f, s);
  return s;
}

IdentifierSet nominals(const Formula& f) {
  IdentifierSet s;
  collect_nominals(f, s);
  return s;
}

IdentifierSet variables(const Inequality& i) {
  IdentifierSet s;
  collect_variables(i.lhs, s);
  collect_variables(i.rhs, s);
  return s;
}

IdentifierSet nominals(const Inequality& i) {
  IdentifierSet s;
  collect_nominals(i.lhs, s);
  collect_nominals(i.rhs, s);
  return s;
}

IdentifierSet variables(const QuasiInequality& q) {
  IdentifierSet s = variables(q.consequent);
  for (const auto& a : q.antecedents) {
    collect_variables(a.lhs, s);
    collect_variables(a.rhs, s);
  }
  return s;
}

IdentifierSet nominals(const QuasiInequality& q) {
  IdentifierSet s = nominals(q.consequent);
  for (const auto& a : q.antecedents) {
    collect_nominals(a.lhs, s);
    collect_nominals(a.rhs, s);
  }
  return s;
}

bool occurs(const Formula& f, const Identifier& p) {
  if (f.is(Kind::Var)) return f.name() == p;
  if (f.is_unary()) return occurs(f.child(), p);
  if (f.is_binary()) return occurs(f.left(), p) || occurs(f.right(), p);
  return false;
}

bool is_basic(const Formula& f) {
  if (f.is(Kind::Nominal) || f.is(Kind::BlackDiamond)) return false;
  if (f.is_unary()) return is_basic(f.child());
  if (f.is_binary()) return is_basic(f.left()) && is_basic(f.right());
  return true;
}

bool is_pure(const Formula& f) { return variables(f).empty(); }
bool is_pure(const Inequality& i) { return is_pure(i.lhs) && is_pure(i.rhs); }
bool is_pure(const QuasiInequality& q) {
  return is_pure(q.consequent) &&
         std::all_of(q.antecedents.begin(), q.antecedents.end(),
                     [](const Inequality& a) { return is_pure(a); });
}

int depth(const Formula& f) {
  if (f.is_unary()) return 1 + depth(f.child());
  if (f.is_binary()) return 1 + std::max(depth(f.left()), depth(f.right()));
  return 0;
}

}  // namespace fmcorr
