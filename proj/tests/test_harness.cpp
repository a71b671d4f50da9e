#include <doctest.h>

#include <random>

#include "fmcorr/harness.hpp"
#include "fmcorr/inductive.hpp"
#include "fmcorr/syntax.hpp"

using namespace fmcorr;

TEST_CASE("partial orders") {
  CHECK(partial_orders(1).size() == 1);
  CHECK(partial_orders(2).size() == 3);
  CHECK(partial_orders(3).size() == 19);
  CHECK(partial_orders(4).size() == 219);
}

TEST_CASE("frame counts") {
  CHECK(count_frames(1) == 2);
  CHECK(count_frames(2) == 58);
  CHECK(count_frames(3) == 20288);
  CHECK(count_frames(1, true) == 2);
  CHECK(count_frames(2, true) == 31);
  CHECK(count_frames(3, true) == 3442);
  CHECK(enumerate_frames(2).size() == 58);
  CHECK(frames_up_to(2).size() == 60);
  CHECK_THROWS_AS(count_frames(0), std::invalid_argument);
  CHECK_THROWS_AS(count_frames(kMaxEnumerationSize + 1), std::invalid_argument);
  for (const auto& f : enumerate_frames(2)) CHECK(check_admissible(f));
}

TEST_CASE("sampled frames are admissible and reproducible") {
  std::mt19937_64 a(7), b(7);
  for (int k = 0; k < 20; ++k) {
    const FMFrame x = sample_frame(4, a), y = sample_frame(4, b);
    CHECK(check_admissible(x));
    CHECK(x.access() == y.access());
  }
}

TEST_CASE("corpus") {
  const auto fixed = fixed_corpus();
  CHECK(fixed.size() == 5);
  const auto corpus = full_corpus(CorpusOptions{});
  CHECK(corpus.size() >= 25);
  for (const auto& f : corpus) {
    CHECK(variables(f).size() <= 3);
    CHECK(depth(f) <= 4);
    CHECK(classify_inductive(f).has_value());
  }
  std::vector<std::string> a, b;
  for (const auto& f : generate_inductive(CorpusOptions{})) a.push_back(print_formula(f));
  for (const auto& f : generate_inductive(CorpusOptions{})) b.push_back(print_formula(f));
  CHECK(a == b);
  CorpusOptions other;
  other.seed = 1;
  std::vector<std::string> c;
  for (const auto& f : generate_inductive(other)) c.push_back(print_formula(f));
  CHECK(a != c);
}

TEST_CASE("crosscheck on the fixed formulas") {
  for (const char* s : {"[]p -> p", "[]p -> [][]p", "p -> p"}) {
    const auto rep = crosscheck(parse_formula(s), 3);
    CHECK(rep.ok());
    CHECK(rep.frames_per_size == std::vector<std::uint64_t>{2, 58, 20288});
  }
  CHECK(crosscheck(parse_formula("p -> p"), 3).valid_frames == 20348);
}

TEST_CASE("serial and parallel runs agree") {
  const auto frames = frames_up_to(3);
  const Formula f = parse_formula("([]q & (q -> []p)) -> []p");
  const auto s = crosscheck(f, frames, Exec::Serial);
  const auto p = crosscheck(f, frames, Exec::Parallel);
  CHECK(s.valid_frames == p.valid_frames);
  CHECK(s.mismatches.size() == p.mismatches.size());
  AlgebraOptions serial, parallel;
  serial.samples = parallel.samples = 10;
  parallel.exec = Exec::Parallel;
  CHECK(algebra_suite(serial).to_json()["tallies"] == algebra_suite(parallel).to_json()["tallies"]);
}

TEST_CASE("labeled and canonical enumeration give the same verdicts") {
  for (const char* s : {"[]p -> [][]p", "p -> []p"}) {
    const Formula f = parse_formula(s);
    const auto labeled = crosscheck(f, frames_up_to(3, false));
    const auto canonical = crosscheck(f, frames_up_to(3, true));
    CHECK(labeled.ok());
    CHECK(canonical.ok());
    CHECK((labeled.valid_frames == 0) == (canonical.valid_frames == 0));
  }
}

TEST_CASE("suites report zero violations") {
  CHECK(success_suite(full_corpus(CorpusOptions{})).ok());
  AdequacyOptions small;
  small.formulas = 40;
  const auto adequacy = adequacy_suite(small);
  CHECK(adequacy.ok());
  AlgebraOptions algebra;
  algebra.max_n = 2;
  algebra.samples = 5;
  CHECK(algebra_suite(algebra).ok());
}

TEST_CASE("rule soundness on the worked example") {
  const auto steps = collect_steps({parse_formula("[]p -> p"), parse_formula("[]p -> [][]p")});
  CHECK(steps.size() >= 4);
  const auto rep = rule_soundness_suite(steps, 3);
  CHECK(rep.ok());
  CHECK(rep.skipped == 0);
}

TEST_CASE("suites detect a planted violation") {
  TraceStep bogus{Rule::Residuation, parse_quasi("@i0 <= []p => @i0 <= p"), {parse_quasi("@i0 <= p => @i0 <= p")}, ""};
  CHECK_FALSE(rule_soundness_suite({bogus}, 2).ok());
  TraceStep frame_level{Rule::Ackermann, parse_quasi("<*>@i0 <= p => @i0 <= p"), {parse_quasi("∅ => @i0 <= @i0")}, "p"};
  CHECK_FALSE(rule_soundness_suite({frame_level}, 2).ok());
}

TEST_CASE("report rendering") {
  Tally t("x");
  t.add(true, nullptr);
  t.add(false, [] { return std::string("first"); });
  t.add(false, [] { return std::string("second"); });
  CHECK(t.checks == 3);
  CHECK(t.violations == 2);
  CHECK(t.first_violation == "first");
  SuiteReport r;
  r.suite = "demo";
  r.tallies.push_back(t);
  CHECK_FALSE(r.ok());
  CHECK(r.to_json()["suite"] == "demo");
  CHECK(r.to_text().find("demo") != std::string::npos);
}
