#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "dtwaug/augment.hpp"
#include "dtwaug/dba.hpp"
#include "dtwaug/dataset.hpp"
#include "dtwaug/rng.hpp"
#include "dtwaug/time_series.hpp"

namespace {

dtwaug::TimeSeries make_series(std::uint64_t seed, std::size_t length) {
  dtwaug::SplitMix64 rng(seed);
  std::vector<double> values(length);
  for (auto& v : values) v = 2.0 * rng.next_unit() - 1.0;
  return dtwaug::TimeSeries(std::move(values));
}

void BM_weighted_dba(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  std::vector<dtwaug::TimeSeries> subset;
  for (std::uint64_t i = 0; i < 6; ++i) subset.push_back(make_series(10 + i, length));
  const std::vector<dtwaug::WeightAssignment::Entry> entries{
      {0, 0.5}, {1, 0.15}, {2, 0.15}, {3, 0.2 / 3}, {4, 0.2 / 3}, {5, 0.2 / 3}};
  const dtwaug::WeightAssignment weights(entries);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtwaug::weighted_dba(subset, weights, subset[0], {}));
  }
}
BENCHMARK(BM_weighted_dba)->Arg(64)->Arg(150)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_augment_dataset(benchmark::State& state) {
  const auto per_class = static_cast<std::size_t>(state.range(0));
  const auto length = static_cast<std::size_t>(state.range(1));
  dtwaug::LabeledDataset train;
  std::uint64_t seed = 0;
  for (int c = 0; c < 2; ++c) {
    const std::string label = "c" + std::to_string(c);
    for (std::size_t i = 0; i < per_class; ++i) {
      train.append(label, make_series(seed++, length));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtwaug::augment_dataset(train, {}));
  }
}
BENCHMARK(BM_augment_dataset)->Args({10, 64})->Args({20, 150})->Unit(benchmark::kMillisecond);

}  // namespace
