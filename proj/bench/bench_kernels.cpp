#include <benchmark/benchmark.h>

#include "fmcorr/harness.hpp"
#include "fmcorr/syntax.hpp"

using namespace fmcorr;

namespace {

const std::vector<FMFrame>& frames3() {
  static const std::vector<FMFrame> frames = frames_up_to(3);
  return frames;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_Crosscheck(benchmark::State& state) {
  const Formula f = parse_formula("([]q & (q -> []p)) -> []p");
  for (auto _ : state) {
    const auto rep = crosscheck(f, frames3(), exec_of(state));
    benchmark::DoNotOptimize(rep.valid_frames);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames3().size()));
}
BENCHMARK(BM_Crosscheck)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AlgebraSuite(benchmark::State& state) {
  AlgebraOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(algebra_suite(opts).violations());
}
BENCHMARK(BM_AlgebraSuite)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RuleSoundness(benchmark::State& state) {
  const auto steps = collect_steps(fixed_corpus());
  for (auto _ : state) benchmark::DoNotOptimize(rule_soundness_suite(steps, frames3(), exec_of(state)).violations());
}
BENCHMARK(BM_RuleSoundness)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FrameEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_frames(3, state.range(0) != 0));
}
BENCHMARK(BM_FrameEnumeration)->ArgName("canonical")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
