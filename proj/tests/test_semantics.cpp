#include <doctest.h>

#include "fmcorr/algebra.hpp"
#include "fmcorr/semantics.hpp"
#include "fmcorr/syntax.hpp"
#include "helpers.hpp"

using namespace fmcorr;
using fmcorr::testing::frame;
using fmcorr::testing::set_of;

namespace {
const FMFrame one = frame({"a"}, {}, {}, {});
const FMFrame one_refl = frame({"a"}, {}, {}, {{0, 0}});
const FMFrame chain = frame({"a", "b"}, {{0, 1}}, {}, {});
const FMFrame chain_eq = frame({"a", "b"}, {{0, 1}}, {{0, 1}}, {});
}  // namespace

TEST_CASE("order operators") {
  CHECK(upset1(chain, set_of({0})) == set_of({0, 1}));
  CHECK(nucleus12(chain, WorldSet{}) == WorldSet{});
  CHECK(nucleus12(chain, chain.all()) == chain.all());
}

TEST_CASE("carriers") {
  CHECK(ROAlgebra(one).carrier() == std::vector<WorldSet>{WorldSet{}, set_of({0})});
  CHECK(ROAlgebra(chain).carrier() == std::vector<WorldSet>{WorldSet{}, set_of({1}), set_of({0, 1})});
  CHECK(ROAlgebra(chain_eq).carrier() == std::vector<WorldSet>{WorldSet{}, set_of({0, 1})});
}

TEST_CASE("admissibility") {
  CHECK(check_admissible(frame({"a", "b"}, {}, {}, {{0, 1}, {1, 1}})));
  CHECK(check_admissible(chain));
  CHECK_FALSE(check_admissible(frame({"a", "b"}, {{0, 1}}, {}, {{1, 0}})));
  CHECK(box_k(frame({"a", "b"}, {{0, 1}}, {}, {{1, 0}}), set_of({1})) == set_of({0}));
}

TEST_CASE("frame construction and loading") {
  CHECK_THROWS_AS(FMFrame(Relation(2), Relation(2), Relation(2)), FrameError);
  CHECK_THROWS_AS(frame({"a", "b"}, {}, {{0, 1}}, {}), FrameError);
  CHECK_THROWS_AS(frame({"a", "b"}, {{0, 1}, {1, 0}}, {}, {}), FrameError);
  const FMFrame loaded = parse_frame_json(R"({"worlds":["a","b"],"leq1":[["a","b"]],"leq2":[],"R":[]})");
  CHECK(loaded.size() == 2);
  CHECK(loaded.leq1().holds(0, 1));
  CHECK(parse_frame_json(frame_to_json(loaded)).leq1() == loaded.leq1());
  CHECK_THROWS_AS(parse_frame_json("{"), FrameError);
  CHECK_THROWS_AS(parse_frame_json(R"({"leq1":[]})"), FrameError);
  CHECK_THROWS_AS(parse_frame_json(R"({"worlds":["a"],"R":[["a","z"]]})"), FrameError);
  CHECK_THROWS_AS(parse_frame_json(R"({"worlds":["a","a"]})"), FrameError);
  CHECK_THROWS_AS(parse_frame_json(R"({"worlds":["a","b"],"leq1":[["a","b"]],"R":[["b","a"]]})"), FrameError);
  CHECK_THROWS_AS(load_frame_file("/nonexistent/frame.json"), FrameError);
}

TEST_CASE("pointwise satisfaction") {
  Valuation v;
  v.props["p"] = set_of({0});
  CHECK(satisfies(one_refl, v, 0, parse_formula("[]p -> p")));
  v.props["p"] = WorldSet{};
  CHECK(satisfies(one_refl, v, 0, parse_formula("[]p -> p")));
  CHECK_FALSE(satisfies(one, v, 0, parse_formula("[]p -> p")));
}

TEST_CASE("validity on one frame") {
  CHECK(valid(ROAlgebra(one_refl), parse_formula("[]p -> p")));
  CHECK_FALSE(valid(ROAlgebra(one), parse_formula("[]p -> p")));
  CHECK(valid(ROAlgebra(chain), parse_inequality("top <= top")));
  CHECK(valid(ROAlgebra(one_refl), parse_quasi("∅ => @i0 <= <*>@i0")));
  CHECK_FALSE(valid(ROAlgebra(one), parse_quasi("∅ => @i0 <= <*>@i0")));
}

TEST_CASE("denotation agrees with truth sets") {
  const FMFrame fr = frame({"a", "b", "c"}, {{0, 1}, {0, 2}}, {{0, 2}}, {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  const ROAlgebra alg(fr);
  REQUIRE(alg.admissible());
  Valuation v;
  v.noms["i"] = 0;
  for (WorldSet p : alg.carrier()) {
    v.props["p"] = p;
    for (const char* s : {"[]p | <*>@i", "p -> []p", "<*>(@i & p) -> p | bot"}) {
      const Formula phi = parse_formula(s);
      CHECK(denotation(alg, v, phi) == truth_set(fr, v, phi));
    }
  }
}

TEST_CASE("valuation budget") {
  const ROAlgebra alg(chain);
  const Formula many = parse_formula("p & q & r & s & t & u & v & w & p1 & p2 & p3 & p4 & p5 -> p");
  CHECK(valuation_count(alg, Signature::of(many)) == 1594323);
  CHECK_THROWS_AS(valid(alg, many, 1000), BudgetExceeded);
}

TEST_CASE("compiled evaluation matches the tree walk") {
  const ROAlgebra alg(frame({"a", "b", "c"}, {{0, 1}}, {}, {{0, 2}, {2, 2}}));
  const Formula phi = parse_formula("[](p -> <*>@i) | (q & top) -> bot | p");
  const Signature sig = Signature::of(phi);
  const CompiledFormula compiled(phi, sig);
  for_each_valuation(alg, sig, kDefaultValidityBudget, [&](std::span<const WorldSet> props, std::span<const World> noms) {
    Valuation v;
    for (std::size_t k = 0; k < props.size(); ++k) v.props[sig.vars[k]] = props[k];
    for (std::size_t k = 0; k < noms.size(); ++k) v.noms[sig.noms[k]] = noms[k];
    CHECK(compiled.eval(alg, props, noms) == denotation(alg, v, phi));
    return true;
  });
}
