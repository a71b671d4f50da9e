#include "fmcorr/fo.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace fmcorr {

FOFormula FOFormula::make(Node n, const FOFormula* l, const FOFormula* r) {
  auto node = std::make_shared<Node>(std::move(n));
  if (l) node->left = std::make_unique<FOFormula>(*l);
  if (r) node->right = std::make_unique<FOFormula>(*r);
  return FOFormula(std::move(node));
}

FOFormula FOFormula::equal(FOTerm a, FOTerm b) {
  return make({FOKind::Equal, RelSym::Leq1, {}, std::move(a), std::move(b), {}, {}}, nullptr, nullptr);
}
FOFormula FOFormula::not_equal(FOTerm a, FOTerm b) {
  return make({FOKind::NotEqual, RelSym::Leq1, {}, std::move(a), std::move(b), {}, {}}, nullptr, nullptr);
}
FOFormula FOFormula::rel(RelSym r, FOTerm a, FOTerm b) {
  return make({FOKind::Rel, r, {}, std::move(a), std::move(b), {}, {}}, nullptr, nullptr);
}
FOFormula FOFormula::pred(std::string name, FOTerm a) {
  return make({FOKind::Pred, RelSym::Leq1, std::move(name), std::move(a), {}, {}, {}}, nullptr, nullptr);
}
FOFormula FOFormula::conj(FOFormula a, FOFormula b) { return make({FOKind::Conj, RelSym::Leq1, {}, {}, {}, {}, {}}, &a, &b); }
FOFormula FOFormula::disj(FOFormula a, FOFormula b) { return make({FOKind::Disj, RelSym::Leq1, {}, {}, {}, {}, {}}, &a, &b); }
FOFormula FOFormula::impl(FOFormula a, FOFormula b) { return make({FOKind::Impl, RelSym::Leq1, {}, {}, {}, {}, {}}, &a, &b); }
FOFormula FOFormula::forall(FOTerm v, FOFormula body) {
  return make({FOKind::Forall, RelSym::Leq1, {}, std::move(v), {}, {}, {}}, &body, nullptr);
}
FOFormula FOFormula::exists(FOTerm v, FOFormula body) {
  return make({FOKind::Exists, RelSym::Leq1, {}, std::move(v), {}, {}, {}}, &body, nullptr);
}

namespace {

void collect_free(const FOFormula& f, std::set<FOTerm>& bound, std::set<FOTerm>& out) {
  auto term = [&](const FOTerm& t) {
    if (!bound.contains(t)) out.insert(t);
  };
  switch (f.kind()) {
    case FOKind::Equal:
    case FOKind::NotEqual:
    case FOKind::Rel:
      term(f.first());
      term(f.second());
      break;
    case FOKind::Pred:
      term(f.first());
      break;
    case FOKind::Conj:
    case FOKind::Disj:
    case FOKind::Impl:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      break;
    case FOKind::Forall:
    case FOKind::Exists: {
      const bool fresh = bound.insert(f.first()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.first());
      break;
    }
  }
}

void collect_predicates(const FOFormula& f, std::set<std::string>& out) {
  if (f.is(FOKind::Pred)) out.insert(f.predicate());
  if (f.is_quantifier()) collect_predicates(f.body(), out);
  if (!f.is_atom() && !f.is_quantifier()) {
    collect_predicates(f.left(), out);
    collect_predicates(f.right(), out);
  }
}

bool collect_binders(const FOFormula& f, std::set<FOTerm>& seen) {
  if (f.is_atom()) return true;
  if (f.is_quantifier()) return seen.insert(f.first()).second && collect_binders(f.body(), seen);
  return collect_binders(f.left(), seen) && collect_binders(f.right(), seen);
}

using Renaming = std::map<FOTerm, int>;

bool same_term(const FOTerm& a, const FOTerm& b, const Renaming& ra, const Renaming& rb) {
  auto ia = ra.find(a), ib = rb.find(b);
  if (ia == ra.end() || ib == rb.end()) return ia == ra.end() && ib == rb.end() && a == b;
  return ia->second == ib->second;
}

bool alpha(const FOFormula& a, const FOFormula& b, Renaming& ra, Renaming& rb, int& depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FOKind::Rel:
      if (a.relation() != b.relation()) return false;
      [[fallthrough]];
    case FOKind::Equal:
    case FOKind::NotEqual:
      return same_term(a.first(), b.first(), ra, rb) && same_term(a.second(), b.second(), ra, rb);
    case FOKind::Pred:
      return a.predicate() == b.predicate() && same_term(a.first(), b.first(), ra, rb);
    case FOKind::Conj:
    case FOKind::Disj:
    case FOKind::Impl:
      return alpha(a.left(), b.left(), ra, rb, depth) && alpha(a.right(), b.right(), ra, rb, depth);
    case FOKind::Forall:
    case FOKind::Exists: {
      if (a.first().sort != b.first().sort) return false;
      const int level = ++depth;
      auto saved_a = ra.find(a.first()) == ra.end() ? std::optional<int>{} : std::optional<int>{ra[a.first()]};
      auto saved_b = rb.find(b.first()) == rb.end() ? std::optional<int>{} : std::optional<int>{rb[b.first()]};
      ra[a.first()] = level;
      rb[b.first()] = level;
      const bool ok = alpha(a.body(), b.body(), ra, rb, depth);
      if (saved_a) ra[a.first()] = *saved_a; else ra.erase(a.first());
      if (saved_b) rb[b.first()] = *saved_b; else rb.erase(b.first());
      return ok;
    }
  }
  return false;
}

int precedence(const FOFormula& f) {
  switch (f.kind()) {
    case FOKind::Forall:
    case FOKind::Exists: return 0;
    case FOKind::Impl: return 1;
    case FOKind::Disj: return 2;
    case FOKind::Conj: return 3;
    default: return 5;
  }
}

const char* relation_name(RelSym r) {
  switch (r) {
    case RelSym::Leq1: return "leq1";
    case RelSym::Leq2: return "leq2";
    case RelSym::Access: return "R";
  }
  return "?";
}

void print_into(std::ostringstream& os, const FOFormula& f, int ctx) {
  const bool wrap = precedence(f) < ctx;
  if (wrap) os << '(';
  switch (f.kind()) {
    case FOKind::Equal: os << f.first().name << " = " << f.second().name; break;
    case FOKind::NotEqual: os << f.first().name << " != " << f.second().name; break;
    case FOKind::Rel:
      os << relation_name(f.relation()) << '(' << f.first().name << ',' << f.second().name << ')';
      break;
    case FOKind::Pred: os << f.predicate() << '(' << f.first().name << ')'; break;
    case FOKind::Conj:
      print_into(os, f.left(), 3);
      os << " & ";
      print_into(os, f.right(), 4);
      break;
    case FOKind::Disj:
      print_into(os, f.left(), 2);
      os << " | ";
      print_into(os, f.right(), 3);
      break;
    case FOKind::Impl:
      print_into(os, f.left(), 2);
      os << " -> ";
      print_into(os, f.right(), 1);
      break;
    case FOKind::Forall:
    case FOKind::Exists:
      os << (f.is(FOKind::Forall) ? "forall " : "exists ") << f.first().name << ". ";
      print_into(os, f.body(), 0);
      break;
  }
  if (wrap) os << ')';
}

}  // namespace

std::set<FOTerm> free_symbols(const FOFormula& f) {
  std::set<FOTerm> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const FOFormula& f) { return free_symbols(f).empty(); }

std::set<std::string> predicates(const FOFormula& f) {
  std::set<std::string> out;
  collect_predicates(f, out);
  return out;
}

bool binders_distinct(const FOFormula& f) {
  std::set<FOTerm> seen;
  if (!collect_binders(f, seen)) return false;
  for (const auto& t : free_symbols(f))
    if (seen.contains(t)) return false;
  return true;
}

int quantifier_count(const FOFormula& f) {
  if (f.is_atom()) return 0;
  if (f.is_quantifier()) return 1 + quantifier_count(f.body());
  return quantifier_count(f.left()) + quantifier_count(f.right());
}

bool alpha_equivalent(const FOFormula& a, const FOFormula& b) {
  Renaming ra, rb;
  int depth = 0;
  return alpha(a, b, ra, rb, depth);
}

std::string print_fo(const FOFormula& f) {
  std::ostringstream os;
  print_into(os, f, 0);
  return os.str();
}

}  // namespace fmcorr
