#include "dtwaug/dba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dtwaug/dtw.hpp"

namespace dtwaug {

namespace {

// Weights indexed by subset position.
std::vector<double> weights_by_member(const WeightAssignment& weights, std::size_t count) {
  if (weights.size() != count) {
    throw std::invalid_argument("weight/subset size mismatch");
  }
  std::vector<double> by_member(count, 0.0);
  for (const auto& entry : weights.entries()) {
    if (entry.index >= count) {
      throw std::invalid_argument("weight index out of range of the subset");
    }
    by_member[entry.index] = entry.weight;
  }
  return by_member;
}

double objective(std::span<const TimeSeries> subset, const std::vector<double>& weight,
                 const TimeSeries& average) {
  double total = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    total += weight[i] * dtw_distance(subset[i], average);
  }
  return total;
}

// One barycenter update: weighted mean of the values aligned to each
// coordinate, clamped to the envelope of the contributing members so the
// convexity invariant holds exactly in floating point.
TimeSeries update_average(std::span<const TimeSeries> subset, const std::vector<double>& weight,
                          const TimeSeries& average, double lo, double hi) {
  const std::size_t len = average.length();
  std::vector<double> sums(len, 0.0);
  std::vector<double> mass(len, 0.0);

  for (std::size_t idx = 0; idx < subset.size(); ++idx) {
    const double w = weight[idx];
    if (w == 0.0) continue;
    const auto alignment = dtw_path(average, subset[idx]);
    const auto& member = subset[idx].values();
    for (const PathStep& step : alignment.path) {
      sums[step.i] += w * member[step.j];
      mass[step.i] += w;
    }
  }

  std::vector<double> next(len);
  for (std::size_t t = 0; t < len; ++t) {
    // A coordinate with no aligned mass keeps its previous value; with valid
    // paths every coordinate receives at least the heaviest member once.
    next[t] = mass[t] > 0.0 ? std::clamp(sums[t] / mass[t], lo, hi) : average[t];
  }
  return TimeSeries(std::move(next));
}

}  // namespace

WeightAssignment::WeightAssignment(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("weight assignment must not be empty");
  }
  double sum = 0.0;
  for (const auto& [index, weight] : entries_) {
    if (!std::isfinite(weight) || weight < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    sum += weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("weights must sum to 1");
  }
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].index == sorted[i - 1].index) {
      throw std::invalid_argument("weight indices must be distinct");
    }
  }
}

WeightAssignment WeightAssignment::uniform(std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("weight assignment must not be empty");
  }
  std::vector<Entry> entries;
  entries.reserve(count);
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) entries.push_back({i, w});
  return WeightAssignment(std::move(entries));
}

DbaResult weighted_dba(std::span<const TimeSeries> subset, const WeightAssignment& weights,
                       const TimeSeries& init, const DbaOptions& options) {
  if (subset.empty()) {
    throw std::invalid_argument("subset must not be empty");
  }
  if (options.max_iters == 0) {
    throw std::invalid_argument("max_iters must be positive");
  }
  if (!(options.rel_tol >= 0.0)) {
    throw std::invalid_argument("rel_tol must be nonnegative");
  }
  const auto weight = weights_by_member(weights, subset.size());

  // Envelope of the members that can influence the result.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (weight[i] == 0.0) continue;
    for (double v : subset[i].values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  TimeSeries average = init;
  std::vector<double> objectives{objective(subset, weight, average)};

  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    const double before = objectives.back();
    if (before == 0.0) break;  // exact fixed point, a further update could only add rounding
    average = update_average(subset, weight, average, lo, hi);
    objectives.push_back(objective(subset, weight, average));
    const double decrease = (before - objectives.back()) / before;
    if (decrease < options.rel_tol) break;
  }
  return {std::move(average), std::move(objectives)};
}

DbaResult dba(std::span<const TimeSeries> subset, const TimeSeries& init,
              const DbaOptions& options) {
  return weighted_dba(subset, WeightAssignment::uniform(subset.size()), init, options);
}

}  // namespace dtwaug
