#include <doctest.h>

#include "fmcorr/inductive.hpp"
#include "fmcorr/syntax.hpp"

using namespace fmcorr;

namespace {
Formula f(const char* s) { return parse_formula(s); }
const DependenceOrder kQbelowP = DependenceOrder::chain({"q", "p"});
}  // namespace

TEST_CASE("positive grammar") {
  CHECK(is_positive(f("[]p | top"), {"p"}));
  CHECK_FALSE(is_positive(f("p -> q"), {"p", "q"}));
  CHECK_FALSE(is_positive(f("q"), {"p"}));
}

TEST_CASE("PIA grammar") {
  CHECK(is_pia(f("[]p"), "p", DependenceOrder{}));
  CHECK(is_pia(f("q -> []p"), "p", kQbelowP));
  CHECK_FALSE(is_pia(f("p -> p"), "p", kQbelowP));
}

TEST_CASE("Ant and Suc grammars") {
  CHECK(is_ant(f("[]p & []q"), DependenceOrder{}));
  CHECK(is_ant(f("[]q & (q -> []p)"), kQbelowP));
  CHECK_FALSE(is_ant(f("[]p -> p"), kQbelowP));
  CHECK(is_suc(f("[][]p"), DependenceOrder{}));
  CHECK(is_suc(f("[]q -> (p | q)"), DependenceOrder{}));
  CHECK_FALSE(is_suc(f("@i0"), DependenceOrder{}));
}

TEST_CASE("classifier search") {
  CHECK(classify_inductive(f("[]p -> p")).has_value());
  const auto o = classify_inductive(f("([]q & (q -> []p)) -> []p"));
  REQUIRE(o.has_value());
  CHECK(o->less("q", "p"));
  const auto pq = classify_inductive(f("(p -> q) -> q"));
  REQUIRE(pq.has_value());
  CHECK(pq->to_string() == "{p < q}");
  CHECK_FALSE(classify_inductive(f("([]p -> p) -> q")).has_value());
  CHECK_FALSE(classify_inductive(f("p & q")).has_value());
}

TEST_CASE("dependence orders") {
  const auto chain = DependenceOrder::chain({"a", "b", "c"});
  CHECK(chain.is_valid());
  CHECK(chain.less("a", "c"));
  CHECK(chain.below("c") == IdentifierSet{"a", "b"});
  CHECK(chain.linearize({"c", "a"}) == std::vector<Identifier>{"a", "c"});
  CHECK_FALSE(DependenceOrder(std::set<std::pair<Identifier, Identifier>>{{"a", "a"}}).is_valid());
  CHECK_FALSE(DependenceOrder(std::set<std::pair<Identifier, Identifier>>{{"a", "b"}, {"b", "c"}}).is_valid());
}

TEST_CASE("classifier rejects very wide formulas") {
  std::string s = "p0";
  for (int i = 1; i <= 10; ++i) s += " & p" + std::to_string(i);
  CHECK_THROWS_AS(classify_inductive(f((s + " -> p0").c_str())), std::invalid_argument);
}
