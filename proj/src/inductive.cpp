#include "fmcorr/inductive.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace fmcorr {

DependenceOrder::DependenceOrder(std::set<std::pair<Identifier, Identifier>> strict_pairs)
    : pairs_(std::move(strict_pairs)) {}

DependenceOrder DependenceOrder::chain(const std::vector<Identifier>& ascending) {
  std::set<std::pair<Identifier, Identifier>> pairs;
  for (std::size_t a = 0; a < ascending.size(); ++a)
    for (std::size_t b = a + 1; b < ascending.size(); ++b) pairs.emplace(ascending[a], ascending[b]);
  return DependenceOrder(std::move(pairs));
}

IdentifierSet DependenceOrder::below(const Identifier& p) const {
  IdentifierSet out;
  for (const auto& [q, r] : pairs_)
    if (r == p) out.insert(q);
  return out;
}

bool DependenceOrder::is_valid() const {
  for (const auto& [a, b] : pairs_) {
    if (a == b) return false;
    for (const auto& [c, d] : pairs_)
      if (b == c && !pairs_.contains({a, d})) return false;
  }
  return true;
}

std::vector<Identifier> DependenceOrder::linearize(const IdentifierSet& vars) const {
  std::vector<Identifier> out;
  IdentifierSet remaining = vars;
  while (!remaining.empty()) {
    auto it = std::find_if(remaining.begin(), remaining.end(), [&](const Identifier& p) {
      return std::none_of(remaining.begin(), remaining.end(),
                          [&](const Identifier& q) { return less(q, p); });
    });
    // A strict order on a finite set always has a minimal element.
    if (it == remaining.end()) throw std::logic_error("dependence order has a cycle");
    out.push_back(*it);
    remaining.erase(it);
  }
  return out;
}

std::string DependenceOrder::to_string() const {
  if (pairs_.empty()) return "{}";
  std::string s = "{";
  bool first = true;
  for (const auto& [q, p] : pairs_) {
    if (!first) s += ", ";
    s += q + " < " + p;
    first = false;
  }
  return s + "}";
}

namespace {

enum class Symbol { Pos, Pia, Ant, Suc };

// Grammar membership by recursive descent, memoized on (node, symbol, parameter).
class GrammarChecker {
 public:
  explicit GrammarChecker(const DependenceOrder& order) : order_(order) {}

  bool pos(const Formula& f, const IdentifierSet& allowed) {
    switch (f.kind()) {
      case Kind::Var: return allowed.contains(f.name());
      case Kind::Bot:
      case Kind::Top: return true;
      case Kind::Box: return pos(f.child(), allowed);
      case Kind::And:
      case Kind::Or: return pos(f.left(), allowed) && pos(f.right(), allowed);
      default: return false;
    }
  }

  bool pos_all(const Formula& f) {
    return memo(f, Symbol::Pos, {}, [&] { return pos(f, variables(f)); });
  }

  bool pia(const Formula& f, const Identifier& main) {
    return memo(f, Symbol::Pia, main, [&] {
      switch (f.kind()) {
        case Kind::Var: return f.name() == main;
        case Kind::Bot:
        case Kind::Top: return true;
        case Kind::Box: return pia(f.child(), main);
        case Kind::Implies:
          // The phantom sits above every variable.
          return (main.empty() ? pos_all(f.left()) : pos(f.left(), order_.below(main))) &&
                 pia(f.right(), main);
        default: return false;
      }
    });
  }

  // Candidate main variables: those of f plus a phantom standing for a fresh variable
  // placed above all others, which covers PIA shapes whose leaves are constants.
  bool pia_some(const Formula& f) {
    if (pia(f, Identifier{})) return true;
    for (const auto& p : variables(f))
      if (pia(f, p)) return true;
    for (const auto& [q, p] : order_.strict_pairs())
      if (pia(f, p)) return true;
    return false;
  }

  bool ant(const Formula& f) {
    return memo(f, Symbol::Ant, {}, [&] {
      if (f.is(Kind::And) || f.is(Kind::Or)) return ant(f.left()) && ant(f.right());
      return pia_some(f);
    });
  }

  bool suc(const Formula& f) {
    return memo(f, Symbol::Suc, {}, [&] {
      if (pos_all(f)) return true;
      switch (f.kind()) {
        case Kind::Implies: return pia_some(f.left()) && suc(f.right());
        case Kind::Box: return suc(f.child());
        case Kind::And: return suc(f.left()) && suc(f.right());
        default: return false;
      }
    });
  }

 private:
  template <class Fn>
  bool memo(const Formula& f, Symbol s, const Identifier& param, Fn&& compute) {
    auto key = std::make_tuple(f.identity(), s, param);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    bool v = compute();
    cache_.emplace(std::move(key), v);
    return v;
  }

  const DependenceOrder& order_;
  std::map<std::tuple<const void*, Symbol, Identifier>, bool> cache_;
};

}  // namespace

bool is_positive(const Formula& f, const IdentifierSet& allowed) {
  DependenceOrder none;
  return GrammarChecker(none).pos(f, allowed);
}

bool is_pia(const Formula& f, const Identifier& main, const DependenceOrder& order) {
  return GrammarChecker(order).pia(f, main);
}

bool is_ant(const Formula& f, const DependenceOrder& order) { return GrammarChecker(order).ant(f); }

bool is_suc(const Formula& f, const DependenceOrder& order) { return GrammarChecker(order).suc(f); }

bool is_inductive(const Formula& f, const DependenceOrder& order) {
  if (!f.is(Kind::Implies) || !is_basic(f)) return false;
  GrammarChecker g(order);
  return g.ant(f.left()) && g.suc(f.right());
}

std::optional<DependenceOrder> classify_inductive(const Formula& f) {
  if (!f.is(Kind::Implies) || !is_basic(f)) return std::nullopt;
  IdentifierSet vs = variables(f);
  if (vs.size() > kMaxClassifierVariables) {
    throw std::invalid_argument("classify_inductive: " + std::to_string(vs.size()) +
                                " variables exceeds the limit of " +
                                std::to_string(kMaxClassifierVariables));
  }
  std::vector<Identifier> perm(vs.begin(), vs.end());
  do {
    DependenceOrder order = DependenceOrder::chain(perm);
    if (is_inductive(f, order)) return order;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace fmcorr
