#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmcorr/formula.hpp"
#include "fmcorr/inductive.hpp"

namespace fmcorr {

// Raised when a system cannot be reduced to pure form.
class AlbaFailure : public std::runtime_error {
 public:
  AlbaFailure(QuasiInequality stuck, std::string reason);
  const QuasiInequality& system() const { return system_; }
  const std::string& reason() const { return reason_; }

 private:
  QuasiInequality system_;
  std::string reason_;
};

enum class Rule { Distribution, Splitting, FirstApproximation, Residuation, Approximation, Deleting, Ackermann };

const char* rule_name(Rule r);
// Splitting, residuation, deleting and distribution preserve truth under each valuation;
// the others only preserve validity on a frame.
bool is_valuation_level(Rule r);

// Stage 1 states are inequalities, written as systems with no antecedents.
struct TraceStep {
  Rule rule;
  QuasiInequality before;
  std::vector<QuasiInequality> after;
  // Scope for splitting/residuation, nominal introduced, or variable eliminated.
  std::string parameter;
};

struct AlbaTrace {
  std::vector<TraceStep> steps;
};

struct AlbaOutput {
  std::vector<QuasiInequality> systems;
  AlbaTrace trace;
};

enum class Scope { Antecedents, Consequent, Both };
const char* to_string(Scope s);

inline constexpr int kMaxDistributionSteps = 100000;

// Distribution rules to fixpoint: lhs gets & over |, rhs gets | over &, -> over &, [] over &.
Formula distribute_lhs(const Formula& f);
Formula distribute_rhs(const Formula& f);

/// Stage 1: distribution on both sides, then splitting of rhs conjunctions and lhs
/// disjunctions into separate inequalities.
std::vector<Inequality> preprocess(const Inequality& ineq, AlbaTrace* trace = nullptr);

// (i <= lhs => i <= rhs) with i fresh for `used` and the inequality.
QuasiInequality first_approximation(const Inequality& ineq, const IdentifierSet& used);

/// a <= b & c  and  a | b <= c. In antecedents they become two antecedents; in the
/// consequent they fork the system. Applied to fixpoint within the scope.
std::vector<QuasiInequality> apply_splitting(const QuasiInequality& sys, Scope scope = Scope::Both);

/// a <= []b  ~>  <*>a <= b  and  a <= b -> c  ~>  a & b <= c.
/// Antecedents: to fixpoint. Consequent: a single rewrite (the driver approximates next).
QuasiInequality apply_residuation(const QuasiInequality& sys, Scope scope = Scope::Antecedents);

/// target must be the consequent phi <= psi: adds antecedent j <= phi and makes j <= psi
/// the consequent, j fresh for `used` and the system.
QuasiInequality apply_approximation(const QuasiInequality& sys, const Inequality& target,
                                    const IdentifierSet& used);

// Drops antecedents a <= top; a consequent a <= top discards all antecedents.
QuasiInequality apply_deleting(const QuasiInequality& sys);

/// Right-handed Ackermann rule eliminating p with the minimal valuation
/// theta_1 | ... | theta_n (bot when n = 0). Throws AlbaFailure on a side condition.
QuasiInequality apply_ackermann(const QuasiInequality& sys, const Identifier& p);

// MinVal_p ::= nominal | <*>MinVal_p | MinVal_p & POS(A_p)
bool is_minval(const Formula& f, const Identifier& p, const DependenceOrder& order);

struct AlbaOptions {
  bool record_trace = true;
  // Elimination order; classify_inductive is consulted when absent.
  std::optional<DependenceOrder> order;
};

/// Runs the three stages on a basic implication. For inductive input the elimination
/// follows the dependence order; otherwise any variable whose side conditions hold is
/// eliminated next. Throws std::invalid_argument for other input shapes, AlbaFailure
/// when a system stays impure.
AlbaOutput run_alba(const Formula& f, const AlbaOptions& options = {});

// Recomputes a step from its before-state.
std::vector<QuasiInequality> replay(const TraceStep& step);

std::string print_step(const TraceStep& step);

}  // namespace fmcorr
