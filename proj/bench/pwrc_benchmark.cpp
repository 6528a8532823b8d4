// Serial reference path vs OpenMP path for the per-interval and per-signal kernels.

#include <benchmark/benchmark.h>

#include "pwrc/baseline.hpp"
#include "pwrc/execution.hpp"
#include "pwrc/experiment.hpp"
#include "pwrc/synthetic.hpp"
#include "pwrc/transform.hpp"

namespace {

using pwrc::Execution;

const pwrc::EnsembleDataset& ensemble() {
  static const pwrc::EnsembleDataset data = [] {
    pwrc::SyntheticSpec spec;
    spec.m = 64;
    spec.n = 64;
    spec.q = 256;
    spec.count = 65;
    spec.seed = 3;
    return pwrc::generate_synthetic(spec);
  }();
  return data;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_Fit(benchmark::State& state) {
  const auto pairs = pwrc::make_pairs(ensemble(), pwrc::knots_for_count(ensemble().size(), 17));
  pwrc::FitConfig cfg = pwrc::FitConfig::uniform(8);
  cfg.execution = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(pwrc::fit(pairs, cfg));
  state.counters["threads"] = state.range(0) ? pwrc::max_threads() : 1;
}

void BM_TransformErrors(benchmark::State& state) {
  const auto pairs = pwrc::make_pairs(ensemble(), pwrc::knots_for_count(ensemble().size(), 17));
  const auto F = pwrc::fit(pairs, pwrc::FitConfig::uniform(8));
  const auto& signals = ensemble().signals;
  for (auto _ : state)
    benchmark::DoNotOptimize(pwrc::transform_errors(F, signals, exec_of(state)));
}

void BM_KltIndividual(benchmark::State& state) {
  const auto& signals = ensemble().signals;
  for (auto _ : state)
    benchmark::DoNotOptimize(pwrc::klt_fit_individual(signals, pwrc::RankBudget{8}, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_Fit)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformErrors)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KltIndividual)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
