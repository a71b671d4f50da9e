#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fmcorr/formula.hpp"

namespace fmcorr {

// Strict order on propositional variables; (q, p) means q is below p.
class DependenceOrder {
 public:
  DependenceOrder() = default;
  explicit DependenceOrder(std::set<std::pair<Identifier, Identifier>> strict_pairs);
  // Chain order: earlier elements are below later ones.
  static DependenceOrder chain(const std::vector<Identifier>& ascending);

  bool less(const Identifier& q, const Identifier& p) const { return pairs_.contains({q, p}); }
  // A_p = { q | q < p }.
  IdentifierSet below(const Identifier& p) const;
  const std::set<std::pair<Identifier, Identifier>>& strict_pairs() const { return pairs_; }
  // Irreflexive and transitive.
  bool is_valid() const;
  // Deterministic linear extension of the order restricted to `vars`, minimal elements first.
  std::vector<Identifier> linearize(const IdentifierSet& vars) const;
  std::string to_string() const;

  friend bool operator==(const DependenceOrder&, const DependenceOrder&) = default;

 private:
  std::set<std::pair<Identifier, Identifier>> pairs_;
};

bool is_positive(const Formula& f, const IdentifierSet& allowed);
bool is_pia(const Formula& f, const Identifier& main, const DependenceOrder& order);
bool is_ant(const Formula& f, const DependenceOrder& order);
bool is_suc(const Formula& f, const DependenceOrder& order);
bool is_inductive(const Formula& f, const DependenceOrder& order);

inline constexpr std::size_t kMaxClassifierVariables = 9;

/// Searches the strict total orders on the variables of `f` (lexicographic order of
/// permutations) for one under which `f` is Ant -> Suc. Empty if none exists or `f`
/// is not a basic implication. Throws std::invalid_argument above
/// kMaxClassifierVariables variables.
std::optional<DependenceOrder> classify_inductive(const Formula& f);

}  // namespace fmcorr
