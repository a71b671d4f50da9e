#include "fmcorr/alba.hpp"

#include <algorithm>
#include <sstream>

#include "fmcorr/syntax.hpp"

namespace fmcorr {

AlbaFailure::AlbaFailure(QuasiInequality stuck, std::string reason)
    : std::runtime_error("ALBA failure: " + reason + " in " + print_quasi(stuck)),
      system_(std::move(stuck)),
      reason_(std::move(reason)) {}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Distribution: return "distribution";
    case Rule::Splitting: return "splitting";
    case Rule::FirstApproximation: return "first-approximation";
    case Rule::Residuation: return "residuation";
    case Rule::Approximation: return "approximation";
    case Rule::Deleting: return "deleting";
    case Rule::Ackermann: return "ackermann";
  }
  return "?";
}

bool is_valuation_level(Rule r) {
  return r == Rule::Distribution || r == Rule::Splitting || r == Rule::Residuation || r == Rule::Deleting;
}

const char* to_string(Scope s) {
  switch (s) {
    case Scope::Antecedents: return "antecedents";
    case Scope::Consequent: return "consequent";
    case Scope::Both: return "both";
  }
  return "?";
}

namespace {

Scope scope_from(const std::string& s) {
  if (s == "antecedents") return Scope::Antecedents;
  if (s == "consequent") return Scope::Consequent;
  if (s == "both") return Scope::Both;
  throw std::invalid_argument("unknown scope '" + s + "'");
}

bool covers_antecedents(Scope s) { return s != Scope::Consequent; }
bool covers_consequent(Scope s) { return s != Scope::Antecedents; }

class Distributor {
 public:
  explicit Distributor(bool lhs) : lhs_(lhs) {}

  Formula run(const Formula& f) {
    if (!f.is_binary() && !f.is_unary()) return f;
    if (f.is_unary()) {
      Formula c = run(f.child());
      if (f.is(Kind::BlackDiamond)) return Formula::black_diamond(c);
      if (!lhs_ && c.is(Kind::And)) {
        tick();
        return Formula::conj(run(Formula::box(c.left())), run(Formula::box(c.right())));
      }
      return Formula::box(c);
    }
    Formula a = run(f.left()), b = run(f.right());
    if (lhs_ && f.is(Kind::And)) {
      if (a.is(Kind::Or)) {
        tick();
        return Formula::disj(run(Formula::conj(a.left(), b)), run(Formula::conj(a.right(), b)));
      }
      if (b.is(Kind::Or)) {
        tick();
        return Formula::disj(run(Formula::conj(a, b.left())), run(Formula::conj(a, b.right())));
      }
    }
    if (!lhs_ && f.is(Kind::Or)) {
      if (a.is(Kind::And)) {
        tick();
        return Formula::conj(run(Formula::disj(a.left(), b)), run(Formula::disj(a.right(), b)));
      }
      if (b.is(Kind::And)) {
        tick();
        return Formula::conj(run(Formula::disj(a, b.left())), run(Formula::disj(a, b.right())));
      }
    }
    if (!lhs_ && f.is(Kind::Implies) && b.is(Kind::And)) {
      tick();
      return Formula::conj(run(Formula::implies(a, b.left())), run(Formula::implies(a, b.right())));
    }
    switch (f.kind()) {
      case Kind::And: return Formula::conj(a, b);
      case Kind::Or: return Formula::disj(a, b);
      default: return Formula::implies(a, b);
    }
  }

 private:
  void tick() {
    if (++steps_ > kMaxDistributionSteps) throw std::logic_error("distribution did not terminate");
  }
  bool lhs_;
  int steps_ = 0;
};

void split_inequality(const Inequality& i, std::vector<Inequality>& out) {
  if (i.rhs.is(Kind::And)) {
    split_inequality({i.lhs, i.rhs.left()}, out);
    split_inequality({i.lhs, i.rhs.right()}, out);
  } else if (i.lhs.is(Kind::Or)) {
    split_inequality({i.lhs.left(), i.rhs}, out);
    split_inequality({i.lhs.right(), i.rhs}, out);
  } else {
    out.push_back(i);
  }
}

Inequality residuate_once(const Inequality& i, bool& changed) {
  changed = true;
  if (i.rhs.is(Kind::Box)) return {Formula::black_diamond(i.lhs), i.rhs.child()};
  if (i.rhs.is(Kind::Implies)) return {Formula::conj(i.lhs, i.rhs.left()), i.rhs.right()};
  changed = false;
  return i;
}

IdentifierSet with_nominals(IdentifierSet used, const QuasiInequality& q) {
  auto ns = nominals(q);
  used.insert(ns.begin(), ns.end());
  return used;
}

bool is_pos_prop(const Formula& f) { return is_positive(f, variables(f)); }

}  // namespace

Formula distribute_lhs(const Formula& f) { return Distributor(true).run(f); }
Formula distribute_rhs(const Formula& f) { return Distributor(false).run(f); }

std::vector<Inequality> preprocess(const Inequality& ineq, AlbaTrace* trace) {
  const Inequality d{distribute_lhs(ineq.lhs), distribute_rhs(ineq.rhs)};
  if (trace && !(d == ineq))
    trace->steps.push_back({Rule::Distribution, {{}, ineq}, {{{}, d}}, ""});
  std::vector<Inequality> parts;
  split_inequality(d, parts);
  if (trace && (parts.size() != 1 || !(parts.front() == d))) {
    std::vector<QuasiInequality> after;
    for (const auto& p : parts) after.push_back({{}, p});
    trace->steps.push_back({Rule::Splitting, {{}, d}, std::move(after), to_string(Scope::Consequent)});
  }
  return parts;
}

QuasiInequality first_approximation(const Inequality& ineq, const IdentifierSet& used) {
  IdentifierSet all = used;
  for (const auto& n : nominals(ineq)) all.insert(n);
  const Formula i = Formula::nominal(fresh_nominal(all));
  return {{{i, ineq.lhs}}, {i, ineq.rhs}};
}

std::vector<QuasiInequality> apply_splitting(const QuasiInequality& sys, Scope scope) {
  std::vector<Inequality> ants;
  if (covers_antecedents(scope)) {
    for (const auto& a : sys.antecedents) split_inequality(a, ants);
  } else {
    ants = sys.antecedents;
  }
  std::vector<Inequality> cons;
  if (covers_consequent(scope)) split_inequality(sys.consequent, cons);
  else cons.push_back(sys.consequent);
  std::vector<QuasiInequality> out;
  for (const auto& c : cons) out.push_back({ants, c});
  return out;
}

QuasiInequality apply_residuation(const QuasiInequality& sys, Scope scope) {
  QuasiInequality out = sys;
  bool changed = false;
  if (covers_antecedents(scope)) {
    for (auto& a : out.antecedents) {
      do a = residuate_once(a, changed);
      while (changed);
    }
  }
  if (covers_consequent(scope)) out.consequent = residuate_once(out.consequent, changed);
  return out;
}

QuasiInequality apply_approximation(const QuasiInequality& sys, const Inequality& target,
                                    const IdentifierSet& used) {
  if (!(target == sys.consequent))
    throw std::invalid_argument("approximation target is not the consequent of the system");
  const Formula j = Formula::nominal(fresh_nominal(with_nominals(used, sys)));
  QuasiInequality out = sys;
  out.antecedents.push_back({j, target.lhs});
  out.consequent = {j, target.rhs};
  return out;
}

QuasiInequality apply_deleting(const QuasiInequality& sys) {
  if (sys.consequent.rhs.is(Kind::Top)) return {{}, sys.consequent};
  QuasiInequality out{{}, sys.consequent};
  for (const auto& a : sys.antecedents)
    if (!a.rhs.is(Kind::Top)) out.antecedents.push_back(a);
  return out;
}

QuasiInequality apply_ackermann(const QuasiInequality& sys, const Identifier& p) {
  std::vector<Formula> thetas;
  std::vector<Inequality> rest;
  for (const auto& a : sys.antecedents) {
    if (a.rhs.is(Kind::Var) && a.rhs.name() == p && !occurs(a.lhs, p)) thetas.push_back(a.lhs);
    else rest.push_back(a);
  }
  auto fail = [&](const Inequality& i, const char* side, Polarity got, const char* want) {
    throw AlbaFailure(sys, "Ackermann on " + p + ": " + side + " of " + print_inequality(i) + " is " +
                               to_string(got) + " in " + p + ", expected " + want);
  };
  // Antecedents must get easier to satisfy as p shrinks, the consequent harder.
  for (const auto& i : rest) {
    if (Polarity l = polarity(i.lhs, p); !positive_or_none(l)) fail(i, "lhs", l, "positive or none");
    if (Polarity r = polarity(i.rhs, p); !negative_or_none(r)) fail(i, "rhs", r, "negative or none");
  }
  const Inequality& c = sys.consequent;
  if (Polarity l = polarity(c.lhs, p); !negative_or_none(l)) fail(c, "lhs", l, "negative or none");
  if (Polarity r = polarity(c.rhs, p); !positive_or_none(r)) fail(c, "rhs", r, "positive or none");

  Formula theta = Formula::bot();
  if (!thetas.empty()) {
    theta = thetas.front();
    for (std::size_t k = 1; k < thetas.size(); ++k) theta = Formula::disj(theta, thetas[k]);
  }
  QuasiInequality out{{}, substitute(sys.consequent, p, theta)};
  for (const auto& i : rest) out.antecedents.push_back(substitute(i, p, theta));
  return out;
}

bool is_minval(const Formula& f, const Identifier& p, const DependenceOrder& order) {
  switch (f.kind()) {
    case Kind::Nominal: return true;
    case Kind::BlackDiamond: return is_minval(f.child(), p, order);
    case Kind::And: return is_minval(f.left(), p, order) && is_positive(f.right(), order.below(p));
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Driver

namespace {

class Driver {
 public:
  Driver(const AlbaOptions& options, std::optional<DependenceOrder> order)
      : record_(options.record_trace), order_(std::move(order)) {}

  AlbaTrace trace;

  std::vector<QuasiInequality> reduce(QuasiInequality sys) {
    sys = normalize_antecedents(std::move(sys));
    if (order_) {
      for (const auto& a : sys.antecedents) {
        if (a.rhs.is(Kind::Var) && !is_minval(a.lhs, a.rhs.name(), *order_))
          throw std::logic_error("antecedent not in minimal-valuation shape: " + print_inequality(a));
      }
    }
    std::vector<QuasiInequality> out;
    decompose(std::move(sys), out);
    return out;
  }

  void note(Rule r, const QuasiInequality& before, std::vector<QuasiInequality> after, std::string param = "") {
    if (record_) trace.steps.push_back({r, before, std::move(after), std::move(param)});
  }

 private:
  QuasiInequality normalize_antecedents(QuasiInequality sys) {
    for (;;) {
      QuasiInequality s = apply_splitting(sys, Scope::Antecedents).front();
      if (!(s == sys)) note(Rule::Splitting, sys, {s}, to_string(Scope::Antecedents));
      QuasiInequality r = apply_residuation(s, Scope::Antecedents);
      if (!(r == s)) note(Rule::Residuation, s, {r}, to_string(Scope::Antecedents));
      const bool stable = r == sys;
      sys = std::move(r);
      if (stable) break;
    }
    return deleting(std::move(sys));
  }

  QuasiInequality deleting(QuasiInequality sys) {
    QuasiInequality d = apply_deleting(sys);
    if (!(d == sys)) note(Rule::Deleting, sys, {d});
    return d;
  }

  QuasiInequality residuate_and_approximate(const QuasiInequality& sys) {
    QuasiInequality r = apply_residuation(sys, Scope::Consequent);
    note(Rule::Residuation, sys, {r}, to_string(Scope::Consequent));
    QuasiInequality a = apply_approximation(r, r.consequent, {});
    note(Rule::Approximation, r, {a}, a.consequent.lhs.name());
    return a;
  }

  void decompose(QuasiInequality sys, std::vector<QuasiInequality>& out) {
    for (;;) {
      const Inequality& c = sys.consequent;
      if (!c.lhs.is(Kind::Nominal) || is_pos_prop(c.rhs)) break;
      if (c.rhs.is(Kind::And)) {
        auto forks = apply_splitting(sys, Scope::Consequent);
        note(Rule::Splitting, sys, forks, to_string(Scope::Consequent));
        for (auto& f : forks) decompose(std::move(f), out);
        return;
      }
      if (c.rhs.is(Kind::Implies)) {
        sys = normalize_antecedents(residuate_and_approximate(sys));
      } else if (c.rhs.is(Kind::Box)) {
        sys = deleting(residuate_and_approximate(sys));
      } else {
        break;
      }
    }
    out.push_back(eliminate(std::move(sys)));
  }

  QuasiInequality ackermann(const QuasiInequality& sys, const Identifier& p) {
    QuasiInequality a = apply_ackermann(sys, p);
    note(Rule::Ackermann, sys, {a}, p);
    return a;
  }

  QuasiInequality eliminate(QuasiInequality sys) {
    if (order_) {
      for (const auto& p : order_->linearize(variables(sys)))
        if (occurs_in(sys, p)) sys = ackermann(sys, p);
    } else {
      while (!is_pure(sys)) {
        bool progressed = false;
        for (const auto& p : variables(sys)) {
          try {
            sys = ackermann(sys, p);
            progressed = true;
            break;
          } catch (const AlbaFailure&) {
          }
        }
        if (!progressed) throw AlbaFailure(sys, "no variable satisfies the Ackermann side conditions");
      }
    }
    if (!is_pure(sys)) throw AlbaFailure(sys, "system is not pure after elimination");
    return sys;
  }

  static bool occurs_in(const QuasiInequality& q, const Identifier& p) { return variables(q).contains(p); }

  bool record_;
  std::optional<DependenceOrder> order_;
};

}  // namespace

AlbaOutput run_alba(const Formula& f, const AlbaOptions& options) {
  if (!f.is(Kind::Implies)) throw std::invalid_argument("ALBA input must be an implication");
  if (!is_basic(f)) throw std::invalid_argument("ALBA input must be in the basic language");
  std::optional<DependenceOrder> order = options.order;
  if (!order) {
    try {
      order = classify_inductive(f);
    } catch (const std::invalid_argument&) {
      // too many variables to classify; fall back to greedy elimination
    }
  }
  Driver driver(options, order);
  AlbaOutput out;
  for (const auto& ineq : preprocess({f.left(), f.right()}, options.record_trace ? &driver.trace : nullptr)) {
    QuasiInequality sys = first_approximation(ineq, {});
    driver.note(Rule::FirstApproximation, {{}, ineq}, {sys}, sys.consequent.lhs.name());
    for (auto& s : driver.reduce(std::move(sys))) out.systems.push_back(std::move(s));
  }
  out.trace = std::move(driver.trace);
  return out;
}

std::vector<QuasiInequality> replay(const TraceStep& step) {
  const QuasiInequality& b = step.before;
  switch (step.rule) {
    case Rule::Distribution:
      return {{b.antecedents, {distribute_lhs(b.consequent.lhs), distribute_rhs(b.consequent.rhs)}}};
    case Rule::Splitting: return apply_splitting(b, scope_from(step.parameter));
    case Rule::FirstApproximation:
      if (!b.antecedents.empty()) throw std::invalid_argument("first approximation applies to a bare inequality");
      return {first_approximation(b.consequent, {})};
    case Rule::Residuation: return {apply_residuation(b, scope_from(step.parameter))};
    case Rule::Approximation: return {apply_approximation(b, b.consequent, {})};
    case Rule::Deleting: return {apply_deleting(b)};
    case Rule::Ackermann: return {apply_ackermann(b, step.parameter)};
  }
  return {};
}

std::string print_step(const TraceStep& step) {
  std::ostringstream os;
  os << rule_name(step.rule);
  if (!step.parameter.empty()) os << '[' << step.parameter << ']';
  os << ": " << print_quasi(step.before) << "  ~>  ";
  for (std::size_t k = 0; k < step.after.size(); ++k) os << (k ? "  ;  " : "") << print_quasi(step.after[k]);
  return os.str();
}

}  // namespace fmcorr
