#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmcorr/alba.hpp"
#include "fmcorr/algebra.hpp"
#include "fmcorr/formula.hpp"
#include "fmcorr/frame.hpp"

namespace fmcorr {

// ---------------------------------------------------------------------------
// Frames

inline constexpr int kMaxEnumerationSize = 5;

// All labeled partial orders on n points, in increasing order of their bit encoding.
std::vector<Relation> partial_orders(int n);

/// Streams every labeled admissible frame on n points in a fixed order: leq1, then
/// leq2 ⊆ leq1, then R, each by bit encoding. With `canonical`, only the
/// lexicographically least relabeling of each isomorphism class is emitted.
/// Throws std::invalid_argument unless 1 <= n <= kMaxEnumerationSize.
void for_each_frame(int n, const std::function<void(const FMFrame&)>& fn, bool canonical = false);
std::vector<FMFrame> enumerate_frames(int n, bool canonical = false);
// Frames of every size 1..max_n, smallest first.
std::vector<FMFrame> frames_up_to(int max_n, bool canonical = false);
// Same count as enumerate_frames without building the frames.
std::uint64_t count_frames(int n, bool canonical = false);

// Uniform over order pairs, then R, rejecting inadmissible draws.
FMFrame sample_frame(int n, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Formula corpora

// Box p -> p, Box p -> Box Box p, p -> Box p, (Box q & (q -> Box p)) -> Box p, p -> p.
std::vector<Formula> fixed_corpus();

struct CorpusOptions {
  std::uint64_t seed = 0;
  int count = 24;
  int max_vars = 3;
  int max_depth = 4;
};

// Distinct formulas sampled from the Ant -> Suc grammar under random dependence orders.
std::vector<Formula> generate_inductive(const CorpusOptions& options);
// fixed_corpus() followed by generate_inductive(), duplicates removed.
std::vector<Formula> full_corpus(const CorpusOptions& options);

// Random formula of the expanded language (nominals and black diamonds when given).
Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<Identifier>& vars,
                       const std::vector<Identifier>& noms, bool expanded);

// ---------------------------------------------------------------------------
// Reports

enum class Exec { Serial, Parallel };

// Counts for one named property.
struct Tally {
  Tally() = default;
  Tally(std::string n) : name(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::string first_violation;

  void add(bool ok, const std::function<std::string()>& describe);
  void merge(const Tally& other);
};

struct SuiteReport {
  std::string suite;
  std::vector<Tally> tallies;
  std::uint64_t frames = 0;
  std::uint64_t skipped = 0;  // budget exhaustion
  double seconds = 0;

  bool ok() const;
  std::uint64_t violations() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct Mismatch {
  std::size_t frame_index;
  std::string frame;
  bool modal;
  bool first_order;
};

struct CrosscheckReport {
  std::string formula;
  std::vector<std::string> systems;
  std::string correspondent;
  std::vector<std::uint64_t> frames_per_size;
  std::vector<Mismatch> mismatches;
  std::uint64_t valid_frames = 0;
  std::uint64_t skipped = 0;
  double seconds = 0;

  bool ok() const { return mismatches.empty() && skipped == 0; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// ---------------------------------------------------------------------------
// Suites

/// ALBA + correspondent once, then modal validity against first-order truth of the
/// correspondent on every frame up to max_n. Throws AlbaFailure.
CrosscheckReport crosscheck(const Formula& f, int max_n, Exec exec = Exec::Serial,
                            std::uint64_t budget = 1'000'000);
// Same against a prepared frame list (frames_per_size is left empty).
CrosscheckReport crosscheck(const Formula& f, const std::vector<FMFrame>& frames, Exec exec = Exec::Serial,
                            std::uint64_t budget = 1'000'000);

/// classify_inductive and run_alba on every formula; one tally each.
SuiteReport success_suite(const std::vector<Formula>& corpus);

struct AlgebraOptions {
  int max_n = 3;
  int sampled_size = 4;
  int samples = 100;
  std::uint64_t seed = 0;
  int formulas = 12;  // for clause/algebra agreement
  Exec exec = Exec::Serial;
};
SuiteReport algebra_suite(const AlgebraOptions& options);
// Properties checked on one frame; tallies in a fixed order.
std::vector<Tally> algebra_checks(const ROAlgebra& alg, const std::vector<Formula>& formulas);

struct AdequacyOptions {
  int formulas = 200;
  int models_per_formula = 3;
  int max_n = 4;
  int depth = 3;
  std::uint64_t seed = 0;
};
/// satisfies against eval_fo of the translation: pointwise for formulas, globally for
/// inequalities and quasi-inequalities.
SuiteReport adequacy_suite(const AdequacyOptions& options);

// Distinct trace steps of run_alba over a corpus.
std::vector<TraceStep> collect_steps(const std::vector<Formula>& corpus);

/// Before/after equivalence per step: valuation by valuation for the valuation-level
/// rules, validity on the frame for the others.
SuiteReport rule_soundness_suite(const std::vector<TraceStep>& steps, int max_n, Exec exec = Exec::Serial,
                                 std::uint64_t budget = 1'000'000);
SuiteReport rule_soundness_suite(const std::vector<TraceStep>& steps, const std::vector<FMFrame>& frames,
                                 Exec exec = Exec::Serial, std::uint64_t budget = 1'000'000);

}  // namespace fmcorr
