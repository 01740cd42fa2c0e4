// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick a pair.

#include "perioscope/closed_form.hpp"
#include "perioscope/kernel_inference.hpp"
#include "perioscope/local_period.hpp"
#include "perioscope/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace perioscope;

namespace {

void periods_args(benchmark::internal::Benchmark* b) { b->Arg(1 << 12)->Arg(1 << 14); }

void BM_periods_serial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    PeriodOracle o(SequenceSpec::parse("rs"));
    benchmark::DoNotOptimize(o.periods_serial(0, n));
  }
}
BENCHMARK(BM_periods_serial)->Apply(periods_args)->Unit(benchmark::kMillisecond);

void BM_periods_parallel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    PeriodOracle o(SequenceSpec::parse("rs"));
    benchmark::DoNotOptimize(o.periods(0, n));
  }
}
BENCHMARK(BM_periods_parallel)->Apply(periods_args)->Unit(benchmark::kMillisecond);

const SummatoryTable& tm_table() {
  static const SummatoryTable t = summatory(SequenceSpec::parse("tm"), 1 << 14);
  return t;
}

void BM_bounds_serial(benchmark::State& state) {
  const BoundSources src{&tm_table(), nullptr};
  for (auto _ : state) benchmark::DoNotOptimize(verify_bound_serial(BoundKind::tm_h_bounds, 1 << 14, src));
}
BENCHMARK(BM_bounds_serial)->Unit(benchmark::kMillisecond);

void BM_bounds_parallel(benchmark::State& state) {
  const BoundSources src{&tm_table(), nullptr};
  for (auto _ : state) benchmark::DoNotOptimize(verify_bound(BoundKind::tm_h_bounds, 1 << 14, src));
}
BENCHMARK(BM_bounds_parallel)->Unit(benchmark::kMillisecond);

const LinearRepresentation& rs_rep() {
  static const LinearRepresentation rep = [] {
    PeriodOracle o(SequenceSpec::parse("rs"));
    const auto p = o.periods(0, 1 << 14);
    const std::vector<Rational> samples(p.begin(), p.end());
    InferenceConfig cfg;
    cfg.train_bound = 1 << 13;
    cfg.validate_bound = 1 << 14;
    return infer(samples, cfg).rep;
  }();
  return rep;
}

void BM_jsr_serial(benchmark::State& state) {
  const auto depth = static_cast<unsigned>(state.range(0));
  const auto& mats = rs_rep().mats();  // built outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(jsr_upper_bound_serial(mats, depth));
}
BENCHMARK(BM_jsr_serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_jsr_parallel(benchmark::State& state) {
  const auto depth = static_cast<unsigned>(state.range(0));
  const auto& mats = rs_rep().mats();  // built outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(jsr_upper_bound(mats, depth));
}
BENCHMARK(BM_jsr_parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
