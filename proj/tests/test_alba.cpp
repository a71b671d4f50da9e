#include <doctest.h>

#include "fmcorr/alba.hpp"
#include "fmcorr/harness.hpp"
#include "fmcorr/semantics.hpp"
#include "fmcorr/syntax.hpp"

using namespace fmcorr;

namespace {
Formula f(const char* s) { return parse_formula(s); }
Inequality ineq(const char* s) { return parse_inequality(s); }
QuasiInequality quasi(const char* s) { return parse_quasi(s); }

std::vector<Inequality> ineqs(std::initializer_list<const char*> ss) {
  std::vector<Inequality> out;
  for (const char* s : ss) out.push_back(ineq(s));
  return out;
}
}  // namespace

TEST_CASE("stage 1 preprocessing") {
  CHECK(preprocess(ineq("[]p <= [][]p")) == ineqs({"[]p <= [][]p"}));
  CHECK(distribute_lhs(f("p & (q | r)")) == f("(p & q) | (p & r)"));
  CHECK(preprocess(ineq("p & (q | r) <= s")) == ineqs({"p & q <= s", "p & r <= s"}));
  CHECK(preprocess(ineq("p <= [](q & r)")) == ineqs({"p <= []q", "p <= []r"}));
  CHECK(distribute_rhs(f("p -> q & r")) == f("(p -> q) & (p -> r)"));
}

TEST_CASE("first approximation") {
  CHECK(first_approximation(ineq("[]p <= p"), {}) == quasi("@i0 <= []p => @i0 <= p"));
  CHECK(first_approximation(ineq("p <= q"), {}) == quasi("@i0 <= p => @i0 <= q"));
  CHECK(first_approximation(ineq("top <= bot"), {}) == quasi("@i0 <= top => @i0 <= bot"));
  CHECK(first_approximation(ineq("p <= q"), {"i0"}) == quasi("@i1 <= p => @i1 <= q"));
}

TEST_CASE("splitting") {
  const auto a = apply_splitting(quasi("@i0 <= p & q => @i0 <= r"));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == quasi("@i0 <= p & @i0 <= q => @i0 <= r"));
  const auto c = apply_splitting(quasi("∅ => @i0 <= p & q"));
  CHECK(c == std::vector<QuasiInequality>{quasi("∅ => @i0 <= p"), quasi("∅ => @i0 <= q")});
  const QuasiInequality plain = quasi("@i0 <= []p => @i0 <= p");
  CHECK(apply_splitting(plain) == std::vector<QuasiInequality>{plain});
  CHECK(apply_splitting(quasi("p | q <= r => top <= top"), Scope::Consequent).front() ==
        quasi("p | q <= r => top <= top"));
}

TEST_CASE("residuation") {
  CHECK(apply_residuation(quasi("@i0 <= []p => @i0 <= p")) == quasi("<*>@i0 <= p => @i0 <= p"));
  CHECK(apply_residuation(quasi("@i0 <= q -> []p => @i0 <= p")) == quasi("<*>(@i0 & q) <= p => @i0 <= p"));
  CHECK(apply_residuation(quasi("∅ => @i0 <= []p"), Scope::Consequent) == quasi("∅ => <*>@i0 <= p"));
}

TEST_CASE("approximation") {
  const QuasiInequality s = quasi("@i1 <= q => <*>@i0 <= p");
  CHECK(apply_approximation(s, s.consequent, {}) == quasi("@i1 <= q & @i2 <= <*>@i0 => @i2 <= p"));
  const QuasiInequality t = quasi("∅ => top <= p");
  CHECK(apply_approximation(t, t.consequent, {}) == quasi("@i0 <= top => @i0 <= p"));
  CHECK_THROWS_AS(apply_approximation(s, ineq("p <= q"), {}), std::invalid_argument);
}

TEST_CASE("deleting") {
  CHECK(apply_deleting(quasi("@i0 <= top & @i1 <= p => @i1 <= q")) == quasi("@i1 <= p => @i1 <= q"));
  CHECK(apply_deleting(quasi("@i1 <= p => <*>@i1 <= top")) == quasi("∅ => <*>@i1 <= top"));
  const QuasiInequality plain = quasi("@i1 <= p => @i1 <= q");
  CHECK(apply_deleting(plain) == plain);
}

TEST_CASE("ackermann") {
  CHECK(apply_ackermann(quasi("<*>@i0 <= p => @i0 <= p"), "p") == quasi("∅ => @i0 <= <*>@i0"));
  CHECK(apply_ackermann(quasi("<*>@i0 <= p & @j <= <*>@i0 => <*>@j <= p"), "p") ==
        quasi("@j <= <*>@i0 => <*>@j <= <*>@i0"));
  CHECK(apply_ackermann(quasi("∅ => @i0 <= p"), "p") == quasi("∅ => @i0 <= bot"));
  CHECK(apply_ackermann(quasi("@a <= p & @b <= p => @a <= []p"), "p") == quasi("∅ => @a <= [](@a | @b)"));
  CHECK(apply_ackermann(quasi("p <= @i0 & <*>@i0 <= p => @i0 <= p"), "p") == quasi("<*>@i0 <= @i0 => @i0 <= <*>@i0"));
  CHECK_THROWS_AS(apply_ackermann(quasi("<*>@i0 <= p & @j <= []p => @j <= p"), "p"), AlbaFailure);
  CHECK_THROWS_AS(apply_ackermann(quasi("@i0 <= p => p <= @i0"), "p"), AlbaFailure);
}

TEST_CASE("minimal valuation shapes") {
  const DependenceOrder o = DependenceOrder::chain({"q", "p"});
  CHECK(is_minval(f("<*>@i0"), "p", o));
  CHECK(is_minval(f("<*>(@i0 & q)"), "p", o));
  CHECK_FALSE(is_minval(f("<*>(@i0 & p)"), "p", o));
  CHECK_FALSE(is_minval(f("[]@i0"), "p", o));
}

TEST_CASE("whole runs") {
  CHECK(run_alba(f("[]p -> p")).systems == std::vector<QuasiInequality>{quasi("∅ => @i0 <= <*>@i0")});
  CHECK(run_alba(f("p -> p")).systems == std::vector<QuasiInequality>{quasi("∅ => @i0 <= @i0")});
  CHECK(run_alba(f("p -> []p")).systems.size() == 1);
  for (const auto& g : fixed_corpus())
    for (const auto& s : run_alba(g).systems) CHECK(is_pure(s));
  CHECK_THROWS_AS(run_alba(f("p & q")), std::invalid_argument);
  CHECK_THROWS_AS(run_alba(f("<*>p -> p")), std::invalid_argument);
}

TEST_CASE("failure carries the stuck system") {
  try {
    run_alba(f("([]p -> p) -> p"));
    FAIL("expected failure");
  } catch (const AlbaFailure& e) {
    CHECK_FALSE(is_pure(e.system()));
    CHECK_FALSE(e.reason().empty());
  }
}

// Compared on every frame up to 3 points.
TEST_CASE("transitivity output is frame-equivalent to the reference system") {
  const auto out = run_alba(f("[]p -> [][]p"));
  REQUIRE(out.systems.size() == 1);
  const QuasiInequality reference = quasi("@j <= <*>@i0 => <*>@j <= <*>@i0");
  for (const auto& fr : frames_up_to(3)) {
    const ROAlgebra alg(fr);
    CHECK(valid(alg, out.systems[0]) == valid(alg, reference));
  }
}

TEST_CASE("every trace step replays") {
  for (const char* s : {"[]p -> p", "[]p -> [][]p", "([]q & (q -> []p)) -> []p", "(p -> q) -> q",
                        "p & (q | r) -> [](q & r)"}) {
    const auto out = run_alba(f(s));
    CHECK_FALSE(out.trace.steps.empty());
    for (const auto& step : out.trace.steps) CHECK(replay(step) == step.after);
  }
}

TEST_CASE("worked example trace") {
  const auto out = run_alba(f("[]p -> p"));
  std::vector<Rule> rules;
  for (const auto& s : out.trace.steps) rules.push_back(s.rule);
  CHECK(rules == std::vector<Rule>{Rule::FirstApproximation, Rule::Residuation, Rule::Ackermann});
  CHECK(out.trace.steps[1].after[0] == quasi("<*>@i0 <= p => @i0 <= p"));
  CHECK(print_step(out.trace.steps[2]).starts_with("ackermann[p]"));
  CHECK(run_alba(f("[]p -> p"), AlbaOptions{false, std::nullopt}).trace.steps.empty());
}
