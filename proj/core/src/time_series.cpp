#include "dtwaug/time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace dtwaug {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("time series must contain at least one value");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("time series values must be finite");
    }
  }
}

}  // namespace dtwaug
