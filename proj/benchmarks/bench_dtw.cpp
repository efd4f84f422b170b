#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "dtwaug/dtw.hpp"
#include "dtwaug/rng.hpp"
#include "dtwaug/time_series.hpp"

namespace {

dtwaug::TimeSeries make_series(std::uint64_t seed, std::size_t length) {
  dtwaug::SplitMix64 rng(seed);
  std::vector<double> values(length);
  for (auto& v : values) v = 2.0 * rng.next_unit() - 1.0;
  return dtwaug::TimeSeries(std::move(values));
}

void BM_dtw_distance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = make_series(1, n);
  const auto b = make_series(2, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtwaug::dtw_distance(a, b));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_dtw_distance)->Arg(64)->Arg(256)->Arg(1024);

void BM_dtw_distance_banded(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = make_series(3, n);
  const auto b = make_series(4, n);
  const std::size_t window = n / 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtwaug::dtw_distance(a, b, window));
  }
}
BENCHMARK(BM_dtw_distance_banded)->Arg(256)->Arg(1024);

void BM_dtw_path(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = make_series(5, n);
  const auto b = make_series(6, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtwaug::dtw_path(a, b));
  }
}
BENCHMARK(BM_dtw_path)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
