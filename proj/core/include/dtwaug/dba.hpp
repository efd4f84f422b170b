#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dtwaug/time_series.hpp"

namespace dtwaug {

/// Per-member weights over a subset of series. Indices address positions in
/// the subset, must be distinct, weights are nonnegative and sum to 1 within
/// kWeightSumTolerance.
class WeightAssignment {
 public:
  struct Entry {
    std::size_t index;
    double weight;

    bool operator==(const Entry&) const = default;
  };

  static constexpr double kWeightSumTolerance = 1e-12;

  /// Throws std::invalid_argument when the invariants above do not hold.
  explicit WeightAssignment(std::vector<Entry> entries);

  /// Equal weights 1/count over indices 0..count-1.
  static WeightAssignment uniform(std::size_t count);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

struct DbaOptions {
  std::size_t max_iters = 10;
  double rel_tol = 1e-8;
};

struct DbaResult {
  TimeSeries average;
  /// Objective F(avg) = sum_i w_i * dtw_distance(s_i, avg), evaluated for the
  /// initial series and after each completed iteration. Non-increasing.
  std::vector<double> objectives;
};

/// Weighted DTW barycenter averaging. Starting from `init`, each iteration
/// aligns every subset member to the current average (average as series A)
/// and replaces coordinate t by the weighted mean of all member values
/// aligned to t:
///
///   avg[t] <- (sum_i w_i * sum_{(t,j) in path_i} s_i[j])
///             / (sum_i w_i * |{j : (t,j) in path_i}|)
///
/// Iterates until max_iters or until the relative decrease of the objective
/// falls below rel_tol. The output has the length of `init`; every output
/// value lies within the [min, max] envelope of the positive-weight members.
///
/// Weights must cover exactly the subset (one entry per member). Throws
/// std::invalid_argument on an empty subset, a weight/subset size mismatch,
/// or invalid options.
DbaResult weighted_dba(std::span<const TimeSeries> subset, const WeightAssignment& weights,
                       const TimeSeries& init, const DbaOptions& options = {});

/// Barycenter averaging with uniform weights 1/|subset|.
DbaResult dba(std::span<const TimeSeries> subset, const TimeSeries& init,
              const DbaOptions& options = {});

}  // namespace dtwaug
