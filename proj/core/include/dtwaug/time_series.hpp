#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dtwaug {

/// Univariate time series: a nonempty ordered sequence of finite real values.
/// Validity (nonempty, finite) is established at construction, so downstream
/// algorithms never re-check.
class TimeSeries {
 public:
  /// Throws std::invalid_argument if values is empty or contains NaN/infinity.
  explicit TimeSeries(std::vector<double> values);

  std::size_t length() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> view() const noexcept { return values_; }

  bool operator==(const TimeSeries&) const = default;

 private:
  std::vector<double> values_;
};

}  // namespace dtwaug
