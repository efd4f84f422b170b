#include "dtwaug/dataset.hpp"

#include <stdexcept>
#include <utility>

namespace dtwaug {

void LabeledDataset::append(std::string label, TimeSeries series) {
  auto [it, inserted] = class_ids_.try_emplace(label, class_order_.size());
  if (inserted) {
    class_order_.push_back(label);
    members_.emplace_back();
  }
  members_[it->second].push_back(instances_.size());
  instances_.push_back({std::move(label), std::move(series)});
}

bool LabeledDataset::has_class(const std::string& label) const {
  return class_ids_.contains(label);
}

std::size_t LabeledDataset::class_id(const std::string& label) const {
  auto it = class_ids_.find(label);
  if (it == class_ids_.end()) {
    throw std::invalid_argument("unknown class label: " + label);
  }
  return it->second;
}

const std::vector<std::size_t>& LabeledDataset::class_instances(const std::string& label) const {
  return members_[class_id(label)];
}

std::size_t LabeledDataset::class_size(const std::string& label) const {
  return class_instances(label).size();
}

}  // namespace dtwaug
