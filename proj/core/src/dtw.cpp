#include "dtwaug/dtw.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace dtwaug {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double squared(double x, double y) {
  const double d = x - y;
  return d * d;
}

// Band half-width widened so the (n, m) corner stays reachable.
inline std::size_t effective_window(std::size_t n, std::size_t m, std::size_t requested) {
  const std::size_t skew = n > m ? n - m : m - n;
  return std::max(requested, skew);
}

inline void row_bounds(std::size_t i, std::size_t m, bool banded, std::size_t w,
                       std::size_t& j_lo, std::size_t& j_hi) {
  j_lo = 1;
  j_hi = m;
  if (banded) {
    if (i > w) j_lo = i - w;
    j_hi = std::min(m, i + w);
  }
}

}  // namespace

double dtw_distance(const TimeSeries& a, const TimeSeries& b,
                    std::optional<std::size_t> window) {
  const auto& x = a.values();
  const auto& y = b.values();
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const bool banded = window.has_value();
  const std::size_t w = banded ? effective_window(n, m, *window) : 0;

  // Two-row rolling storage over the (n+1) x (m+1) table; row and column 0
  // act as +inf borders except the (0,0) origin.
  std::vector<double> prev(m + 1, kInf);
  std::vector<double> curr(m + 1, kInf);
  prev[0] = 0.0;

  for (std::size_t i = 1; i <= n; ++i) {
    std::fill(curr.begin(), curr.end(), kInf);
    std::size_t j_lo, j_hi;
    row_bounds(i, m, banded, w, j_lo, j_hi);
    const double xi = x[i - 1];
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double best = std::min({prev[j - 1], prev[j], curr[j - 1]});
      curr[j] = best + squared(xi, y[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

DtwAlignment dtw_path(const TimeSeries& a, const TimeSeries& b,
                      std::optional<std::size_t> window) {
  const auto& x = a.values();
  const auto& y = b.values();
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const bool banded = window.has_value();
  const std::size_t w = banded ? effective_window(n, m, *window) : 0;

  const std::size_t stride = m + 1;
  std::vector<double> d((n + 1) * stride, kInf);
  d[0] = 0.0;

  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t j_lo, j_hi;
    row_bounds(i, m, banded, w, j_lo, j_hi);
    const double xi = x[i - 1];
    const double* above = d.data() + (i - 1) * stride;
    double* row = d.data() + i * stride;
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double best = std::min({above[j - 1], above[j], row[j - 1]});
      row[j] = best + squared(xi, y[j - 1]);
    }
  }

  const double cost = d[n * stride + m];

  // Backtrack from (n, m), preferring the diagonal, then the A-advancing
  // predecessor, then the B-advancing one on ties.
  WarpingPath path;
  path.reserve(n + m - 1);
  std::size_t i = n;
  std::size_t j = m;
  path.push_back({i - 1, j - 1});
  while (i > 1 || j > 1) {
    const double diag = d[(i - 1) * stride + (j - 1)];
    const double from_a = d[(i - 1) * stride + j];
    const double from_b = d[i * stride + (j - 1)];
    const double best = std::min({diag, from_a, from_b});
    if (diag == best) {
      --i;
      --j;
    } else if (from_a == best) {
      --i;
    } else {
      --j;
    }
    path.push_back({i - 1, j - 1});
  }
  std::reverse(path.begin(), path.end());
  return {std::move(path), cost};
}

}  // namespace dtwaug
