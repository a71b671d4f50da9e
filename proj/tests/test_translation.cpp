#include <doctest.h>

#include "fmcorr/fo.hpp"
#include "fmcorr/semantics.hpp"
#include "fmcorr/syntax.hpp"
#include "fmcorr/translation.hpp"
#include "helpers.hpp"

using namespace fmcorr;

namespace {
const FOTerm x = FOTerm::world("x");
Formula f(const char* s) { return parse_formula(s); }
}  // namespace

TEST_CASE("closure shape") {
  VariableSupply supply({"x"});
  const FOTerm i = FOTerm::nominal("i");
  const FOFormula r = syntactic_ro_closure(x, [&](const FOTerm& t) { return FOFormula::equal(i, t); }, supply);
  CHECK(print_fo(r) == "forall y. leq1(x,y) -> (exists z. leq2(y,z) & (exists u. leq1(u,z) & i = u))");
}

TEST_CASE("translation table") {
  CHECK(print_fo(st(x, Formula::top())) == "x = x");
  CHECK(print_fo(st(x, Formula::bot())) == "x != x");
  CHECK(print_fo(st(x, f("[]p"))) == "forall y. R(x,y) -> P(y)");
  CHECK(print_fo(st(x, f("p"))) == "P(x)");
  const FOFormula d = st(x, f("<*>@i"));
  CHECK(d.is(FOKind::Forall));
  CHECK(quantifier_count(d) == 7);
  CHECK(free_symbols(d) == std::set<FOTerm>{x, FOTerm::nominal("i")});
}

TEST_CASE("inequalities and systems") {
  CHECK(print_fo(st_inequality(parse_inequality("p <= q"))) == "forall x. P(x) -> Q(x)");
  CHECK(print_fo(st_inequality(parse_inequality("bot <= p"))) == "forall x. x != x -> P(x)");
  const FOFormula c = correspondent({parse_quasi("∅ => @i0 <= @i0")});
  CHECK(is_sentence(c));
  CHECK(c.is(FOKind::Forall));
  CHECK(c.first() == FOTerm::nominal("i0"));
  CHECK(binders_distinct(c));
  CHECK_THROWS_AS(correspondent({}), std::invalid_argument);
  CHECK_THROWS_AS(correspondent({parse_quasi("∅ => @i0 <= p")}), std::invalid_argument);
}

TEST_CASE("translation is stable and name-safe") {
  const auto a = print_fo(correspondent({parse_quasi("@j <= <*>@i0 => <*>@j <= <*>@i0")}));
  const auto b = print_fo(correspondent({parse_quasi("@j <= <*>@i0 => <*>@j <= <*>@i0")}));
  CHECK(a == b);
  const FOFormula clash = st(x, f("<*>@x & [](@y | q)"));
  CHECK(binders_distinct(clash));
}

TEST_CASE("alpha equivalence") {
  const FOFormula a = FOFormula::forall(FOTerm::world("a"), FOFormula::rel(RelSym::Access, x, FOTerm::world("a")));
  const FOFormula b = FOFormula::forall(FOTerm::world("b"), FOFormula::rel(RelSym::Access, x, FOTerm::world("b")));
  const FOFormula c = FOFormula::forall(FOTerm::world("b"), FOFormula::rel(RelSym::Access, FOTerm::world("b"), x));
  CHECK(alpha_equivalent(a, b));
  CHECK_FALSE(alpha_equivalent(a, c));
}

TEST_CASE("first-order evaluation") {
  const FMFrame fr = testing::frame({"a", "b"}, {{0, 1}}, {}, {{0, 1}});
  FOEnv env;
  env.predicates["P"] = testing::set_of({1});
  const FOFormula box_p = st(x, f("[]p"));
  env.terms[x] = 0;
  CHECK(eval_fo(fr, env, box_p));
  env.predicates["P"] = WorldSet{};
  CHECK_FALSE(eval_fo(fr, env, box_p));
  CHECK_THROWS_AS(eval_fo(fr, FOEnv{}, box_p), UnboundSymbol);
  FOEnv no_pred;
  no_pred.terms[x] = 0;
  CHECK_THROWS_AS(eval_fo(fr, no_pred, box_p), UnboundSymbol);
}

TEST_CASE("pointwise agreement with the relational clauses") {
  const FMFrame fr = testing::frame({"a", "b", "c"}, {{0, 1}, {1, 2}}, {{1, 2}}, {{0, 0}, {1, 2}, {2, 2}});
  REQUIRE(check_admissible(fr));
  Valuation v;
  v.props["p"] = testing::set_of({1, 2});
  v.props["q"] = testing::set_of({2});
  v.noms["i"] = 1;
  for (const char* s : {"[]p -> p", "<*>@i & q", "@i -> []p", "(p -> q) | <*>(@i & p)"}) {
    const Formula phi = f(s);
    FOEnv env;
    env.predicates["P"] = v.props["p"];
    env.predicates["Q"] = v.props["q"];
    env.terms[FOTerm::nominal("i")] = 1;
    for (World w = 0; w < 3; ++w) {
      env.terms[x] = w;
      CHECK(satisfies(fr, v, w, phi) == eval_fo(fr, env, st(x, phi)));
    }
  }
}
