#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dtwaug/time_series.hpp"

namespace dtwaug {

/// One alignment step: index i into series A paired with index j into series B.
struct PathStep {
  std::size_t i;
  std::size_t j;

  bool operator==(const PathStep&) const = default;
};

/// Monotone, contiguous alignment from (0,0) to (n-1,m-1); consecutive steps
/// advance by (1,0), (0,1) or (1,1).
using WarpingPath = std::vector<PathStep>;

struct DtwAlignment {
  WarpingPath path;
  double cost;
};

/// DTW distance between two series: the minimum over all warping paths of the
/// accumulated squared pointwise differences. No square root is applied.
///
/// `window` is an optional Sakoe-Chiba band half-width; when set it is widened
/// to at least |n-m| so the end cell stays reachable. Default is unconstrained.
/// Exactly symmetric in its arguments.
double dtw_distance(const TimeSeries& a, const TimeSeries& b,
                    std::optional<std::size_t> window = std::nullopt);

/// DTW distance together with an optimal warping path. Backtracking ties are
/// broken deterministically: diagonal first, then the A-advancing cell, then
/// the B-advancing cell, so dtw_path(a, a) is the pure diagonal.
/// The returned cost equals dtw_distance(a, b) and equals the squared
/// differences summed along the returned path.
DtwAlignment dtw_path(const TimeSeries& a, const TimeSeries& b,
                      std::optional<std::size_t> window = std::nullopt);

}  // namespace dtwaug
