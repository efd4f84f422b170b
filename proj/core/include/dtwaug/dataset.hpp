#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtwaug/time_series.hpp"

namespace dtwaug {

struct LabeledInstance {
  std::string label;
  TimeSeries series;

  bool operator==(const LabeledInstance&) const = default;
};

/// Ordered collection of labeled series. Classes are identified by their
/// exact label token and listed in first-appearance order; series lengths
/// may differ across instances.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::string name) : name_(std::move(name)) {}

  void append(std::string label, TimeSeries series);
  void reserve(std::size_t n) { instances_.reserve(n); }

  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }
  const LabeledInstance& operator[](std::size_t i) const noexcept { return instances_[i]; }
  const std::vector<LabeledInstance>& instances() const noexcept { return instances_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Class labels in first-appearance order.
  const std::vector<std::string>& class_order() const noexcept { return class_order_; }
  std::size_t class_count() const noexcept { return class_order_.size(); }
  bool has_class(const std::string& label) const;

  /// Position of a label within class_order(). Throws std::invalid_argument
  /// for an unknown label.
  std::size_t class_id(const std::string& label) const;

  /// Instance indices of one class, in dataset order.
  const std::vector<std::size_t>& class_instances(const std::string& label) const;
  std::size_t class_size(const std::string& label) const;

  bool operator==(const LabeledDataset& other) const { return instances_ == other.instances_; }

 private:
  std::vector<LabeledInstance> instances_;
  std::vector<std::string> class_order_;
  std::unordered_map<std::string, std::size_t> class_ids_;
  std::vector<std::vector<std::size_t>> members_;  // parallel to class_order_
  std::string name_;
};

}  // namespace dtwaug
