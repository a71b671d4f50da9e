#include <doctest.h>

#include "fmcorr/formula.hpp"
#include "fmcorr/syntax.hpp"

using namespace fmcorr;

TEST_CASE("parse builds the expected trees") {
  CHECK(ast_string(parse_formula("[]p -> p")) == "Implies(Box(p), p)");
  CHECK(ast_string(parse_formula("@i0")) == "@i0");
  CHECK(ast_string(parse_formula("p & q | r")) == "Or(And(p, q), r)");
  CHECK(ast_string(parse_formula("p -> q -> r")) == "Implies(p, Implies(q, r))");
  CHECK(ast_string(parse_formula("<*>[]p & top")) == "And(BlackDiamond(Box(p)), Top)");
}

TEST_CASE("print inverts parse") {
  CHECK(print_formula(Formula::implies(Formula::box(Formula::var("p")), Formula::var("p"))) == "[]p -> p");
  CHECK(print_formula(Formula::bot()) == "bot");
  CHECK(print_formula(Formula::black_diamond(Formula::nominal("i0"))) == "<*>@i0");
  for (const char* s : {"[]p -> p", "(p -> q) -> q", "p & (q | r)", "[](p & q) -> <*>@i0 | bot",
                        "(p & q) & r", "p & q & r", "[]([]q -> p)"}) {
    const Formula f = parse_formula(s);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("quasi-inequalities round trip") {
  for (const char* s : {"@i0 <= []p => @i0 <= p", "∅ => @i0 <= <*>@i0", "@j <= <*>@i0 & <*>@i0 <= p => <*>@j <= p"}) {
    const QuasiInequality q = parse_quasi(s);
    CHECK(parse_quasi(print_quasi(q)) == q);
  }
  CHECK(parse_quasi("{} => top <= top").antecedents.empty());
  CHECK(parse_quasi("p <= q => q <= p").antecedents.size() == 1);
}

TEST_CASE("parse errors report position and expectations") {
  try {
    parse_formula("p &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
    CHECK(e.expected().contains("identifier"));
  }
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p ~ q"), ParseError);
  CHECK_THROWS_AS(parse_quasi("p => q"), ParseError);
}

TEST_CASE("substitution") {
  const Formula d = parse_formula("<*>@i0");
  CHECK(substitute(parse_formula("[]p"), "p", d) == parse_formula("[]<*>@i0"));
  CHECK(substitute(parse_formula("q -> p"), "p", Formula::bot()) == parse_formula("q -> bot"));
  CHECK(substitute(Formula::top(), "p", Formula::var("q")) == Formula::top());
}

TEST_CASE("polarity") {
  CHECK(polarity(parse_formula("p -> q"), "p") == Polarity::Negative);
  CHECK(polarity(parse_formula("[]p"), "p") == Polarity::Positive);
  CHECK(polarity(parse_formula("(p -> q) -> r"), "p") == Polarity::Positive);
  CHECK(polarity(parse_formula("p -> p"), "p") == Polarity::Both);
  CHECK(polarity(parse_formula("q"), "p") == Polarity::None);
  CHECK(polarity(parse_formula("<*>(p & q)"), "p") == Polarity::Positive);
}

TEST_CASE("fresh nominals take the first gap") {
  CHECK(fresh_nominal({}) == "i0");
  CHECK(fresh_nominal({"i0"}) == "i1");
  CHECK(fresh_nominal({"i0", "i2"}) == "i1");
}

TEST_CASE("symbol collection and shape predicates") {
  const Formula f = parse_formula("[]q & (q -> []p) -> <*>@j");
  CHECK(variables(f) == IdentifierSet{"p", "q"});
  CHECK(nominals(f) == IdentifierSet{"j"});
  CHECK_FALSE(is_basic(f));
  CHECK(is_basic(parse_formula("[]p -> p")));
  CHECK(is_pure(parse_formula("@i & <*>@j")));
  CHECK_FALSE(is_pure(parse_formula("@i & p")));
  CHECK(depth(parse_formula("[]p -> p")) == 2);
}
