#include "fmcorr/translation.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

#include "fmcorr/syntax.hpp"

namespace fmcorr {

FOTerm VariableSupply::fresh() {
  static constexpr const char* kBase[] = {"x", "y", "z", "u", "v", "w"};
  for (;;) {
    const std::size_t k = next_++;
    std::string name = kBase[k % 6];
    if (k >= 6) name += std::to_string(k / 6);
    if (!reserved_.contains(name)) return FOTerm::world(std::move(name));
  }
}

std::string predicate_name(const Identifier& p) {
  std::string s = p;
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

FOFormula syntactic_ro_closure(const FOTerm& x, const std::function<FOFormula(const FOTerm&)>& body,
                               VariableSupply& supply) {
  const FOTerm y = supply.fresh();
  const FOTerm z = supply.fresh();
  const FOTerm zp = supply.fresh();
  FOFormula inner = FOFormula::exists(zp, FOFormula::conj(FOFormula::rel(RelSym::Leq1, zp, z), body(zp)));
  FOFormula mid = FOFormula::exists(z, FOFormula::conj(FOFormula::rel(RelSym::Leq2, y, z), inner));
  return FOFormula::forall(y, FOFormula::impl(FOFormula::rel(RelSym::Leq1, x, y), mid));
}

FOFormula st(const FOTerm& x, const Formula& f, VariableSupply& supply) {
  switch (f.kind()) {
    case Kind::Var:
      return FOFormula::pred(predicate_name(f.name()), x);
    case Kind::Bot:
      return FOFormula::not_equal(x, x);
    case Kind::Top:
      return FOFormula::equal(x, x);
    case Kind::Nominal: {
      const FOTerm i = FOTerm::nominal(f.name());
      return syntactic_ro_closure(x, [&](const FOTerm& t) { return FOFormula::equal(i, t); }, supply);
    }
    case Kind::And:
      return FOFormula::conj(st(x, f.left(), supply), st(x, f.right(), supply));
    case Kind::Or: {
      const FOTerm y = supply.fresh();
      const FOTerm z = supply.fresh();
      FOFormula either = FOFormula::disj(st(z, f.left(), supply), st(z, f.right(), supply));
      return FOFormula::forall(
          y, FOFormula::impl(FOFormula::rel(RelSym::Leq1, x, y),
                             FOFormula::exists(z, FOFormula::conj(FOFormula::rel(RelSym::Leq2, y, z), either))));
    }
    case Kind::Implies: {
      const FOTerm y = supply.fresh();
      return FOFormula::forall(
          y, FOFormula::impl(FOFormula::rel(RelSym::Leq1, x, y),
                             FOFormula::impl(st(y, f.left(), supply), st(y, f.right(), supply))));
    }
    case Kind::Box: {
      const FOTerm y = supply.fresh();
      return FOFormula::forall(
          y, FOFormula::impl(FOFormula::rel(RelSym::Access, x, y), st(y, f.child(), supply)));
    }
    case Kind::BlackDiamond:
      return syntactic_ro_closure(
          x,
          [&](const FOTerm& t) {
            const FOTerm y = supply.fresh();
            return FOFormula::exists(
                y, FOFormula::conj(FOFormula::rel(RelSym::Access, y, t), st(y, f.child(), supply)));
          },
          supply);
  }
  throw std::logic_error("st: unknown formula kind");
}

FOFormula st(const FOTerm& x, const Formula& f) {
  IdentifierSet reserved = nominals(f);
  reserved.insert(x.name);
  VariableSupply supply(std::move(reserved));
  return st(x, f, supply);
}

FOFormula st_inequality(const Inequality& ineq, VariableSupply& supply) {
  const FOTerm x = supply.fresh();
  return FOFormula::forall(x, FOFormula::impl(st(x, ineq.lhs, supply), st(x, ineq.rhs, supply)));
}

FOFormula st_inequality(const Inequality& ineq) {
  VariableSupply supply(nominals(ineq));
  return st_inequality(ineq, supply);
}

FOFormula st_quasi(const QuasiInequality& q, VariableSupply& supply) {
  if (q.antecedents.empty()) return st_inequality(q.consequent, supply);
  FOFormula premises = st_inequality(q.antecedents.front(), supply);
  for (std::size_t k = 1; k < q.antecedents.size(); ++k)
    premises = FOFormula::conj(premises, st_inequality(q.antecedents[k], supply));
  return FOFormula::impl(premises, st_inequality(q.consequent, supply));
}

FOFormula st_quasi(const QuasiInequality& q) {
  VariableSupply supply(nominals(q));
  return st_quasi(q, supply);
}

FOFormula correspondent(const std::vector<QuasiInequality>& systems) {
  if (systems.empty()) throw std::invalid_argument("correspondent: no systems");
  IdentifierSet reserved;
  for (const auto& s : systems) {
    if (!is_pure(s)) throw std::invalid_argument("correspondent: system is not pure: " + print_quasi(s));
    auto ns = nominals(s);
    reserved.insert(ns.begin(), ns.end());
  }
  // Nominal quantifiers are hoisted over the whole conjunction so binders stay distinct.
  const IdentifierSet all_nominals = reserved;
  VariableSupply supply(std::move(reserved));
  std::optional<FOFormula> out;
  for (const auto& s : systems) {
    FOFormula translated = st_quasi(s, supply);
    out = out ? FOFormula::conj(*out, translated) : translated;
  }
  for (auto it = all_nominals.rbegin(); it != all_nominals.rend(); ++it)
    out = FOFormula::forall(FOTerm::nominal(*it), *out);
  return *out;
}

}  // namespace fmcorr
