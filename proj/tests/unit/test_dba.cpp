#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dtwaug/dba.hpp"
#include "dtwaug/dtw.hpp"
#include "dtwaug/rng.hpp"
#include "dtwaug/time_series.hpp"
#include "oracles.hpp"

using dtwaug::dba;
using dtwaug::DbaOptions;
using dtwaug::dtw_distance;
using dtwaug::SplitMix64;
using dtwaug::TimeSeries;
using dtwaug::WeightAssignment;
using dtwaug::weighted_dba;

namespace {

TimeSeries ts(std::initializer_list<double> values) {
  return TimeSeries(std::vector<double>(values));
}

WeightAssignment plain_weights(const std::vector<double>& weights) {
  std::vector<WeightAssignment::Entry> entries;
  for (std::size_t i = 0; i < weights.size(); ++i) entries.push_back({i, weights[i]});
  return WeightAssignment(std::move(entries));
}

// Random positive weights normalized to sum 1.
std::vector<double> random_weights(SplitMix64& rng, std::size_t count) {
  std::vector<double> w(count);
  double sum = 0.0;
  for (auto& v : w) {
    v = 0.05 + rng.next_unit();
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

}  // namespace

TEST_SUITE("dba") {

TEST_CASE("frozen two-member examples") {
  SUBCASE("constant series average to the weighted midpoint") {
    const std::vector<TimeSeries> subset{ts({0, 0, 0}), ts({2, 2, 2})};
    const auto result = weighted_dba(subset, plain_weights({0.5, 0.5}), ts({0, 0, 0}));
    CHECK(result.average == ts({1, 1, 1}));
    CHECK(result.objectives == std::vector<double>{6.0, 3.0, 3.0});
  }

  SUBCASE("uniform average of mirrored ramps") {
    const std::vector<TimeSeries> subset{ts({1, 3}), ts({3, 1})};
    const auto result = weighted_dba(subset, plain_weights({0.5, 0.5}), ts({1, 3}));
    CHECK(result.average == ts({2, 2}));
  }

  SUBCASE("uniform dba midpoint") {
    const std::vector<TimeSeries> subset{ts({0, 0}), ts({4, 4})};
    const auto result = dba(subset, subset[0]);
    CHECK(result.average == ts({2, 2}));
    CHECK(result.objectives == std::vector<double>{16.0, 8.0, 8.0});
  }
}

TEST_CASE("single series is an exact fixed point") {
  SplitMix64 rng(0x11u);
  for (int round = 0; round < 10; ++round) {
    const std::vector<TimeSeries> subset{oracles::random_series(rng, 4 + rng.next_below(10),
                                                                -3.0, 3.0)};
    const auto result = dba(subset, subset[0]);
    CHECK(result.average == subset[0]);
    CHECK(result.objectives == std::vector<double>{0.0});
  }
}

TEST_CASE("zero-weight members leave the result bitwise unchanged") {
  SplitMix64 rng(0x22u);
  for (int round = 0; round < 20; ++round) {
    const auto s = oracles::random_series(rng, 3 + rng.next_below(8), -2.0, 2.0);
    const auto t = oracles::random_series(rng, 3 + rng.next_below(8), -2.0, 2.0);
    const auto u = oracles::random_series(rng, 3 + rng.next_below(8), -2.0, 2.0);
    const auto init = oracles::random_series(rng, 3 + rng.next_below(8), -2.0, 2.0);

    const std::vector<TimeSeries> with_padding{s, t, u};
    const std::vector<TimeSeries> active{s, u};
    const auto padded = weighted_dba(with_padding, plain_weights({0.7, 0.0, 0.3}), init);
    const auto bare = weighted_dba(active, plain_weights({0.7, 0.3}), init);
    CAPTURE(round);
    CHECK(padded.average == bare.average);
    CHECK(padded.objectives == bare.objectives);
  }
}

TEST_CASE("objective trace is recomputable and non-increasing") {
  SplitMix64 rng(0x33u);
  for (int round = 0; round < 30; ++round) {
    const std::size_t count = 2 + rng.next_below(5);
    std::vector<TimeSeries> subset;
    for (std::size_t i = 0; i < count; ++i) {
      subset.push_back(oracles::random_series(rng, 3 + rng.next_below(10), -3.0, 3.0));
    }
    const auto weights = random_weights(rng, count);
    const auto& init = subset[rng.next_below(count)];
    const auto result = weighted_dba(subset, plain_weights(weights), init);
    CAPTURE(round);

    double f_init = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      f_init += weights[i] * dtw_distance(subset[i], init);
    }
    CHECK(result.objectives.front() == f_init);

    double f_final = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      f_final += weights[i] * dtw_distance(subset[i], result.average);
    }
    CHECK(result.objectives.back() == doctest::Approx(f_final).epsilon(1e-12));

    REQUIRE(result.objectives.size() >= 2);
    CHECK(result.objectives.size() <= DbaOptions{}.max_iters + 1);
    for (std::size_t k = 1; k < result.objectives.size(); ++k) {
      CHECK(result.objectives[k] <= result.objectives[k - 1] * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("one iteration matches the independent update oracle") {
  // Grid values keep both DP tables exactly equal, so the alignments agree
  // and only the summation order differs between library and oracle.
  SplitMix64 rng(0x44u);
  for (int round = 0; round < 100; ++round) {
    const std::size_t count = 2 + rng.next_below(4);
    std::vector<TimeSeries> subset;
    for (std::size_t i = 0; i < count; ++i) {
      subset.push_back(oracles::random_grid_series(rng, 2 + rng.next_below(7)));
    }
    const auto weights = random_weights(rng, count);
    const auto init = oracles::random_grid_series(rng, 2 + rng.next_below(7));

    const auto result = weighted_dba(subset, plain_weights(weights), init, {1, 1e-8});
    const auto expected = oracles::dba_update_oracle(subset, weights, init);
    CAPTURE(round);
    REQUIRE(result.average.length() == expected.size());
    for (std::size_t t = 0; t < expected.size(); ++t) {
      CHECK(result.average[t] == doctest::Approx(expected[t]).epsilon(1e-12));
    }
  }
}

TEST_CASE("result keeps the init length and stays in the member envelope") {
  SplitMix64 rng(0x55u);
  for (int round = 0; round < 30; ++round) {
    const std::size_t count = 2 + rng.next_below(4);
    std::vector<TimeSeries> subset;
    double lo = 1e300;
    double hi = -1e300;
    for (std::size_t i = 0; i < count; ++i) {
      subset.push_back(oracles::random_series(rng, 2 + rng.next_below(12), -4.0, 4.0));
      lo = std::min(lo, *std::min_element(subset.back().values().begin(),
                                          subset.back().values().end()));
      hi = std::max(hi, *std::max_element(subset.back().values().begin(),
                                          subset.back().values().end()));
    }
    const auto init = oracles::random_series(rng, 2 + rng.next_below(12), -6.0, 6.0);
    const auto result = weighted_dba(subset, plain_weights(random_weights(rng, count)), init);
    CAPTURE(round);
    REQUIRE(result.average.length() == init.length());
    for (double v : result.average.values()) {
      CHECK(v >= lo);
      CHECK(v <= hi);
    }
  }
}

TEST_CASE("input validation") {
  const std::vector<TimeSeries> subset{ts({1, 2}), ts({2, 3})};

  SUBCASE("weight assignment invariants") {
    CHECK_THROWS_AS(WeightAssignment({}), std::invalid_argument);
    CHECK_THROWS_AS(plain_weights({-0.5, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(plain_weights({0.4, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(WeightAssignment({{0, 0.5}, {0, 0.5}}), std::invalid_argument);
    CHECK_NOTHROW(plain_weights({0.5, 0.5 + 5e-13}));
  }

  SUBCASE("subset and weight shapes must agree") {
    CHECK_THROWS_AS(weighted_dba(std::vector<TimeSeries>{}, plain_weights({1.0}), ts({1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_dba(subset, plain_weights({1.0}), ts({1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_dba(subset, WeightAssignment({{0, 0.5}, {2, 0.5}}), ts({1})),
                    std::invalid_argument);
  }

  SUBCASE("options") {
    CHECK_THROWS_AS(weighted_dba(subset, plain_weights({0.5, 0.5}), ts({1}), {0, 1e-8}),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_dba(subset, plain_weights({0.5, 0.5}), ts({1}), {10, -1.0}),
                    std::invalid_argument);
  }
}

}  // TEST_SUITE("dba")
