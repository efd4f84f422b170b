#include "dtwaug/classify.hpp"

#include <stdexcept>

#include "dtwaug/dtw.hpp"

namespace dtwaug {

std::size_t nearest_neighbor(const LabeledDataset& train, const TimeSeries& query,
                             std::optional<std::size_t> window) {
  if (train.empty()) {
    throw std::invalid_argument("training set must not be empty");
  }
  std::size_t best = 0;
  double best_distance = dtw_distance(train[0].series, query, window);
  for (std::size_t i = 1; i < train.size(); ++i) {
    const double distance = dtw_distance(train[i].series, query, window);
    if (distance < best_distance) {  // strict: ties keep the smallest index
      best = i;
      best_distance = distance;
    }
  }
  return best;
}

const std::string& classify_1nn(const LabeledDataset& train, const TimeSeries& query,
                                std::optional<std::size_t> window) {
  return train[nearest_neighbor(train, query, window)].label;
}

EvaluationResult evaluate(const LabeledDataset& train, const LabeledDataset& test,
                          std::optional<std::size_t> window) {
  if (train.empty() || test.empty()) {
    throw std::invalid_argument("train and test sets must not be empty");
  }
  EvaluationResult result;
  result.total = test.size();
  result.predictions.reserve(test.size());
  for (const auto& instance : test.instances()) {
    const std::string& predicted = classify_1nn(train, instance.series, window);
    if (predicted == instance.label) ++result.correct;
    result.predictions.push_back(predicted);
  }
  result.accuracy = static_cast<double>(result.correct) / static_cast<double>(result.total);
  return result;
}

}  // namespace dtwaug
