#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dtwaug/dataset.hpp"
#include "dtwaug/time_series.hpp"

namespace dtwaug {

/// Index of the training series with minimum DTW distance to the query;
/// ties broken by smallest training index. Throws on an empty training set.
std::size_t nearest_neighbor(const LabeledDataset& train, const TimeSeries& query,
                             std::optional<std::size_t> window = std::nullopt);

/// Label of the DTW-nearest training series.
const std::string& classify_1nn(const LabeledDataset& train, const TimeSeries& query,
                                std::optional<std::size_t> window = std::nullopt);

struct EvaluationResult {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy = 0.0;
  std::vector<std::string> predictions;  // in test order
};

/// 1-NN DTW accuracy of `train` against a labeled test set.
EvaluationResult evaluate(const LabeledDataset& train, const LabeledDataset& test,
                          std::optional<std::size_t> window = std::nullopt);

}  // namespace dtwaug
