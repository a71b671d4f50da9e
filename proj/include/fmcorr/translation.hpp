#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fmcorr/fo.hpp"
#include "fmcorr/formula.hpp"

namespace fmcorr {

// Hands out world-variable names x, y, z, u, v, w, x1, y1, ... never repeating and
// never colliding with reserved names (nominal symbols in scope).
class VariableSupply {
 public:
  VariableSupply() = default;
  explicit VariableSupply(IdentifierSet reserved) : reserved_(std::move(reserved)) {}
  FOTerm fresh();

 private:
  IdentifierSet reserved_;
  std::size_t next_ = 0;
};

// Name of the unary predicate interpreting propositional variable p (p -> P).
std::string predicate_name(const Identifier& p);

/// RO12_x(alpha) = forall y (x leq1 y -> exists z (y leq2 z & exists z' (z' leq1 z & alpha(z')))).
/// `body` builds alpha at the term it receives.
FOFormula syntactic_ro_closure(const FOTerm& x, const std::function<FOFormula(const FOTerm&)>& body,
                               VariableSupply& supply);

/// Refined regular open translation of an expanded-language formula at world variable x.
FOFormula st(const FOTerm& x, const Formula& f, VariableSupply& supply);
FOFormula st(const FOTerm& x, const Formula& f);

// forall x (ST_x(lhs) -> ST_x(rhs))
FOFormula st_inequality(const Inequality& ineq, VariableSupply& supply);
FOFormula st_inequality(const Inequality& ineq);
// (/\ ST(antecedents)) -> ST(consequent); with no antecedents, just ST(consequent).
FOFormula st_quasi(const QuasiInequality& q, VariableSupply& supply);
FOFormula st_quasi(const QuasiInequality& q);

/// Universal closure over all nominal symbols of the conjunction of the systems'
/// translations. Throws std::invalid_argument on impure or empty input.
FOFormula correspondent(const std::vector<QuasiInequality>& systems);

}  // namespace fmcorr
