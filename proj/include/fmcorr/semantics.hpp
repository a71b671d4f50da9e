#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmcorr/algebra.hpp"
#include "fmcorr/fo.hpp"
#include "fmcorr/formula.hpp"

namespace fmcorr {

class UnboundSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Propositional variables take RO12 values; a nominal names the world whose
// closure c({i}) it denotes.
struct Valuation {
  std::map<Identifier, WorldSet> props;
  std::map<Identifier, World> noms;
};

/// Pointwise satisfaction by the relational clauses. Works on any frame; the
/// clauses for nominals and the black diamond quantify along leq1, leq2 and R.
bool satisfies(const FMFrame& f, const Valuation& v, World w, const Formula& phi);
// { w | satisfies(w) }
WorldSet truth_set(const FMFrame& f, const Valuation& v, const Formula& phi);

// Value obtained by folding the RO12 operations over phi.
WorldSet denotation(const ROAlgebra& alg, const Valuation& v, const Formula& phi);
bool holds(const ROAlgebra& alg, const Valuation& v, const Inequality& ineq);
bool holds(const ROAlgebra& alg, const Valuation& v, const QuasiInequality& q);

// Ordered symbols of a valuation space.
struct Signature {
  std::vector<Identifier> vars;
  std::vector<Identifier> noms;

  static Signature of(const Formula& f);
  static Signature of(const Inequality& i);
  static Signature of(const QuasiInequality& q);
  static Signature of(std::span<const QuasiInequality> qs);
  void merge(const Signature& other);
};

// Formula compiled against a signature; evaluates by index without map lookups.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const Signature& sig);
  WorldSet eval(const ROAlgebra& alg, std::span<const WorldSet> props, std::span<const World> noms) const;

 private:
  enum class Op : std::uint8_t { Var, Nom, Bot, Top, And, Or, Implies, Box, Diamond };
  struct Instr {
    Op op;
    std::uint16_t index;
  };
  std::vector<Instr> code_;
};

// A quasi-inequality compiled against a signature.
class CompiledQuasi {
 public:
  CompiledQuasi(const QuasiInequality& q, const Signature& sig);
  bool holds(const ROAlgebra& alg, std::span<const WorldSet> props, std::span<const World> noms) const;

 private:
  std::vector<std::pair<CompiledFormula, CompiledFormula>> antecedents_;
  CompiledFormula lhs_, rhs_;
};

inline constexpr std::uint64_t kDefaultValidityBudget = 1'000'000;

// Number of valuations of `sig` on the frame, saturating at UINT64_MAX.
std::uint64_t valuation_count(const ROAlgebra& alg, const Signature& sig);

// Throws BudgetExceeded when the valuation space of `sig` is larger than `budget`.
void check_budget(const ROAlgebra& alg, const Signature& sig, std::uint64_t budget);

/// Calls fn(props, noms) for every valuation of `sig`: variables over the carrier,
/// nominals over the worlds. Stops early when fn returns false; returns false iff stopped.
/// Throws BudgetExceeded when the space is larger than `budget`.
template <class Fn>
bool for_each_valuation(const ROAlgebra& alg, const Signature& sig, std::uint64_t budget, Fn&& fn) {
  check_budget(alg, sig, budget);
  const auto& carrier = alg.carrier();
  const std::size_t nv = sig.vars.size(), nn = sig.noms.size();
  const std::size_t worlds = static_cast<std::size_t>(alg.frame().size());
  std::vector<std::size_t> digits(nv + nn, 0);
  std::vector<WorldSet> props(nv, carrier.front());
  std::vector<World> noms(nn, 0);
  for (;;) {
    if (!fn(std::span<const WorldSet>(props), std::span<const World>(noms))) return false;
    // Odometer; variables are the low digits.
    std::size_t k = 0;
    for (; k < nv + nn; ++k) {
      if (++digits[k] < (k < nv ? carrier.size() : worlds)) break;
      digits[k] = 0;
    }
    if (k == nv + nn) return true;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j < nv) props[j] = carrier[digits[j]];
      else noms[j - nv] = static_cast<World>(digits[j]);
    }
  }
}

// Validity: global truth under every valuation.
bool valid(const ROAlgebra& alg, const Formula& phi, std::uint64_t budget = kDefaultValidityBudget);
bool valid(const ROAlgebra& alg, const Inequality& ineq, std::uint64_t budget = kDefaultValidityBudget);
bool valid(const ROAlgebra& alg, const QuasiInequality& q, std::uint64_t budget = kDefaultValidityBudget);

// First-order evaluation over a frame. Terms cover world variables and nominal symbols.
struct FOEnv {
  std::map<FOTerm, World> terms;
  std::map<std::string, WorldSet> predicates;
};

/// Tarskian evaluation; quantifiers range over the frame's worlds. Subformula
/// results are memoized on the values of their free symbols. Throws UnboundSymbol.
bool eval_fo(const FMFrame& f, const FOEnv& env, const FOFormula& phi);

}  // namespace fmcorr
