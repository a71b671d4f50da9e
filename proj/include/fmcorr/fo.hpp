#pragma once

#include <memory>
#include <set>
#include <string>

namespace fmcorr {

// Individual symbols: world variables and nominal constants live in separate namespaces.
struct FOTerm {
  enum class Sort { World, Nominal };
  Sort sort;
  std::string name;

  static FOTerm world(std::string n) { return {Sort::World, std::move(n)}; }
  static FOTerm nominal(std::string n) { return {Sort::Nominal, std::move(n)}; }

  friend auto operator<=>(const FOTerm&, const FOTerm&) = default;
  friend bool operator==(const FOTerm&, const FOTerm&) = default;
};

enum class RelSym { Leq1, Leq2, Access };

enum class FOKind { Equal, NotEqual, Rel, Pred, Conj, Disj, Impl, Forall, Exists };

// Immutable first-order formula over the signature {leq1, leq2, R, unary predicates}.
class FOFormula {
 public:
  static FOFormula equal(FOTerm a, FOTerm b);
  static FOFormula not_equal(FOTerm a, FOTerm b);
  static FOFormula rel(RelSym r, FOTerm a, FOTerm b);
  static FOFormula pred(std::string name, FOTerm a);
  static FOFormula conj(FOFormula a, FOFormula b);
  static FOFormula disj(FOFormula a, FOFormula b);
  static FOFormula impl(FOFormula a, FOFormula b);
  static FOFormula forall(FOTerm v, FOFormula body);
  static FOFormula exists(FOTerm v, FOFormula body);

  FOKind kind() const { return node_->kind; }
  bool is(FOKind k) const { return node_->kind == k; }
  bool is_atom() const { return kind() <= FOKind::Pred; }
  bool is_quantifier() const { return is(FOKind::Forall) || is(FOKind::Exists); }

  RelSym relation() const { return node_->rel; }
  const std::string& predicate() const { return node_->pred; }
  // Atom arguments (Pred uses only first()); quantifier variable is first().
  const FOTerm& first() const { return node_->a; }
  const FOTerm& second() const { return node_->b; }
  const FOFormula& left() const { return *node_->left; }
  const FOFormula& right() const { return *node_->right; }
  const FOFormula& body() const { return *node_->left; }

  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    FOKind kind;
    RelSym rel = RelSym::Leq1;
    std::string pred;
    FOTerm a{}, b{};
    std::unique_ptr<FOFormula> left, right;
  };
  explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static FOFormula make(Node n, const FOFormula* l, const FOFormula* r);

  std::shared_ptr<const Node> node_;
};

std::set<FOTerm> free_symbols(const FOFormula& f);
bool is_sentence(const FOFormula& f);
std::set<std::string> predicates(const FOFormula& f);
// Each quantifier binds a distinct symbol that is also never free.
bool binders_distinct(const FOFormula& f);
int quantifier_count(const FOFormula& f);

// Equal up to renaming of bound symbols.
bool alpha_equivalent(const FOFormula& a, const FOFormula& b);

// forall x. ..., exists x. ..., &, |, ->, =, !=, leq1(x,y), leq2(x,y), R(x,y), P(x)
std::string print_fo(const FOFormula& f);

}  // namespace fmcorr
