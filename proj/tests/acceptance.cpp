// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fmcorr/alba.hpp"
#include "fmcorr/harness.hpp"
#include "fmcorr/inductive.hpp"
#include "fmcorr/syntax.hpp"
#include "fmcorr/translation.hpp"

using namespace fmcorr;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    r.ok = false;
    r.detail += " (over time limit)";
  }
  if (!r.ok) ++failures;
  std::printf("[%s] %d. %s: %s (%.2f s)\n", r.ok ? "PASS" : "FAIL", id, title, r.detail.c_str(), s);
  std::fflush(stdout);
}

// Built by hand so the check does not go through the translation code.
FOFormula ro(const FOTerm& x, const std::function<FOFormula(const FOTerm&)>& body, int& k) {
  const FOTerm y = FOTerm::world("a" + std::to_string(k++));
  const FOTerm z = FOTerm::world("a" + std::to_string(k++));
  const FOTerm w = FOTerm::world("a" + std::to_string(k++));
  return FOFormula::forall(
      y, FOFormula::impl(FOFormula::rel(RelSym::Leq1, x, y),
                         FOFormula::exists(z, FOFormula::conj(FOFormula::rel(RelSym::Leq2, y, z),
                                                              FOFormula::exists(w, FOFormula::conj(
                                                                                       FOFormula::rel(RelSym::Leq1, w, z),
                                                                                       body(w)))))));
}

FOFormula expected_reflexivity_sentence() {
  int k = 0;
  const FOTerm i = FOTerm::nominal("n");
  const FOTerm x = FOTerm::world("x");
  const auto is_i = [&](const FOTerm& t) { return FOFormula::equal(i, t); };
  const FOFormula lhs = ro(x, is_i, k);
  const FOFormula rhs = ro(
      x,
      [&](const FOTerm& u) {
        const FOTerm y = FOTerm::world("y");
        return FOFormula::exists(y, FOFormula::conj(FOFormula::rel(RelSym::Access, y, u), ro(y, is_i, k)));
      },
      k);
  return FOFormula::forall(i, FOFormula::forall(x, FOFormula::impl(lhs, rhs)));
}

bool is_reflexivity_system(const QuasiInequality& q) {
  const Formula& l = q.consequent.lhs;
  const Formula& r = q.consequent.rhs;
  return q.antecedents.empty() && l.is(Kind::Nominal) && r.is(Kind::BlackDiamond) && r.child() == l;
}

}  // namespace

int main() {
  const CorpusOptions corpus_opts;  // seed 0
  const auto corpus = full_corpus(corpus_opts);

  report(1, "worked example []p -> p", 1.0, [] {
    const Formula f = parse_formula("[]p -> p");
    const auto out = run_alba(f);
    if (out.systems.size() != 1 || !is_reflexivity_system(out.systems[0]))
      return Outcome{false, "unexpected systems"};
    const auto order = classify_inductive(f);
    if (!order) return Outcome{false, "not classified"};
    AlbaOptions opts;
    opts.order = order;
    const FOFormula sentence = correspondent(run_alba(f, opts).systems);
    if (!alpha_equivalent(sentence, expected_reflexivity_sentence()))
      return Outcome{false, "sentence shape differs: " + print_fo(sentence)};
    return Outcome{true, print_quasi(out.systems[0])};
  });

  report(2, "classification and ALBA succeed on the corpus", 10.0, [&] {
    const auto rep = success_suite(corpus);
    return Outcome{rep.ok() && corpus.size() >= 25,
                   std::to_string(corpus.size()) + " formulas, " + std::to_string(rep.violations()) + " failures"};
  });

  report(3, "modal validity equals correspondent truth, labeled frames <= 3", 300.0, [] {
    const auto frames = frames_up_to(3);
    std::uint64_t mismatches = 0, skipped = 0;
    for (const auto& f : fixed_corpus()) {
      const auto rep = crosscheck(f, frames);
      mismatches += rep.mismatches.size();
      skipped += rep.skipped;
    }
    return Outcome{mismatches == 0 && skipped == 0,
                   std::to_string(fixed_corpus().size()) + " formulas x " + std::to_string(frames.size()) +
                       " frames, " + std::to_string(mismatches) + " mismatches, " + std::to_string(skipped) +
                       " skipped"};
  });

  report(4, "translation adequacy", 0, [] {
    const auto rep = adequacy_suite(AdequacyOptions{});
    std::uint64_t triples = 0;
    for (const auto& t : rep.tallies)
      if (t.name == "formula") triples = t.checks;
    return Outcome{rep.ok() && triples >= 500,
                   std::to_string(triples) + " triples, " + std::to_string(rep.violations()) + " discrepancies"};
  });

  report(5, "algebra laws on frames <= 3 and sampled 4-point frames", 0, [] {
    const auto rep = algebra_suite(AlgebraOptions{});
    return Outcome{rep.ok(), std::to_string(rep.frames) + " frames, " + std::to_string(rep.violations()) +
                                 " violations"};
  });

  report(6, "rule soundness on labeled frames <= 3", 0, [&] {
    const auto steps = collect_steps(corpus);
    const auto rep = rule_soundness_suite(steps, 3, Exec::Parallel);
    return Outcome{rep.ok() && rep.skipped == 0,
                   std::to_string(steps.size()) + " steps, " + std::to_string(rep.violations()) + " violations, " +
                       std::to_string(rep.skipped) + " skipped"};
  });

  return failures;
}
