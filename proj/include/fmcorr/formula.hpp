#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fmcorr {

using Identifier = std::string;
using IdentifierSet = std::set<Identifier>;

enum class Kind { Var, Bot, Top, Nominal, And, Or, Implies, Box, BlackDiamond };

// Immutable syntax tree of the expanded modal language. Copies share nodes.
class Formula {
 public:
  static Formula var(Identifier name);
  static Formula nominal(Identifier name);
  static Formula bot();
  static Formula top();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula black_diamond(Formula a);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const {
    return is(Kind::And) || is(Kind::Or) || is(Kind::Implies);
  }
  bool is_unary() const { return is(Kind::Box) || is(Kind::BlackDiamond); }

  // Var and Nominal only.
  const Identifier& name() const { return node_->name; }
  // Binary connectives: left()/right(). Unary connectives: child().
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  const Formula& child() const { return *node_->left; }

  std::size_t hash() const { return node_->hash; }
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Total structural order, used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Identifier name;
    std::unique_ptr<Formula> left;
    std::unique_ptr<Formula> right;
    std::size_t hash = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, Identifier name, const Formula* l, const Formula* r);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct Inequality {
  Formula lhs;
  Formula rhs;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

// antecedents & ... => consequent. Empty antecedents denote the empty meta-conjunction.
struct QuasiInequality {
  std::vector<Inequality> antecedents;
  Inequality consequent;
  friend bool operator==(const QuasiInequality&, const QuasiInequality&) = default;
};

enum class Polarity { None, Positive, Negative, Both };

Polarity join(Polarity a, Polarity b);
Polarity flip(Polarity p);
// True for None and Positive.
inline bool positive_or_none(Polarity p) { return p == Polarity::None || p == Polarity::Positive; }
inline bool negative_or_none(Polarity p) { return p == Polarity::None || p == Polarity::Negative; }
const char* to_string(Polarity p);

/// Occurrence-parity polarity of `p` in `f`: implication flips its antecedent,
/// every other connective is monotone.
Polarity polarity(const Formula& f, const Identifier& p);

/// Replaces every occurrence of the propositional variable `p` by `theta`.
Formula substitute(const Formula& f, const Identifier& p, const Formula& theta);
Inequality substitute(const Inequality& ineq, const Identifier& p, const Formula& theta);
QuasiInequality substitute(const QuasiInequality& q, const Identifier& p, const Formula& theta);

/// First index gap in i0, i1, i2, ... not present in `used`.
Identifier fresh_nominal(const IdentifierSet& used);

void collect_variables(const Formula& f, IdentifierSet& out);
void collect_nominals(const Formula& f, IdentifierSet& out);
IdentifierSet variables(const Formula& f);
IdentifierSet nominals(const Formula& f);
IdentifierSet variables(const Inequality& i);
IdentifierSet nominals(const Inequality& i);
IdentifierSet variables(const QuasiInequality& q);
IdentifierSet nominals(const QuasiInequality& q);

bool occurs(const Formula& f, const Identifier& p);

// No nominals and no black diamonds.
bool is_basic(const Formula& f);
// No propositional variables.
bool is_pure(const Formula& f);
bool is_pure(const Inequality& i);
bool is_pure(const QuasiInequality& q);

// Height of the tree; atoms and constants have depth 0.
int depth(const Formula& f);

}  // namespace fmcorr
