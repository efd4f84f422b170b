#include "dtwaug/augment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "dtwaug/dtw.hpp"

namespace dtwaug {

namespace {

// All other class members ordered by (DTW distance to the seed, index).
std::vector<std::size_t> rank_neighbors(std::span<const TimeSeries> members,
                                        std::size_t seed_index) {
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(members.size() - 1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i == seed_index) continue;
    ranked.emplace_back(dtw_distance(members[seed_index], members[i]), i);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::size_t> order;
  order.reserve(ranked.size());
  for (const auto& [dist, idx] : ranked) order.push_back(idx);
  return order;
}

SelectedSubset pick_subset(const std::vector<std::size_t>& ranking, std::size_t seed_index,
                           const AugmentationPolicy& policy, SplitMix64& rng) {
  const std::size_t k = std::min(policy.neighbor_count, ranking.size());
  const std::size_t boosted = std::min(policy.boosted_count, k);

  std::vector<std::size_t> subset;
  subset.reserve(k + 1);
  subset.push_back(seed_index);
  subset.insert(subset.end(), ranking.begin(), ranking.begin() + k);

  // Draw `boosted` distinct neighbor positions by partial Fisher-Yates.
  std::vector<std::size_t> pool(k);
  for (std::size_t i = 0; i < k; ++i) pool[i] = i;
  for (std::size_t i = 0; i < boosted; ++i) {
    const std::size_t pick = i + rng.next_below(k - i);
    std::swap(pool[i], pool[pick]);
  }
  std::vector<bool> is_boosted(k, false);
  for (std::size_t i = 0; i < boosted; ++i) is_boosted[pool[i]] = true;

  const std::size_t rest = k - boosted;
  const double share = rest > 0 ? policy.residual_mass / static_cast<double>(rest) : 0.0;

  std::vector<WeightAssignment::Entry> entries;
  entries.reserve(k + 1);
  entries.push_back({0, policy.seed_weight});
  for (std::size_t q = 0; q < k; ++q) {
    entries.push_back({q + 1, is_boosted[q] ? policy.boosted_weight : share});
  }

  double sum = 0.0;
  for (const auto& entry : entries) sum += entry.weight;
  if (std::abs(sum - 1.0) > WeightAssignment::kWeightSumTolerance) {
    for (auto& entry : entries) entry.weight /= sum;
  }
  return {std::move(subset), WeightAssignment(std::move(entries))};
}

std::vector<TimeSeries> gather_class(const LabeledDataset& train, const std::string& label) {
  std::vector<TimeSeries> members;
  const auto& indices = train.class_instances(label);
  members.reserve(indices.size());
  for (std::size_t idx : indices) members.push_back(train[idx].series);
  return members;
}

std::size_t class_target(const LabeledDataset& train, const AugmentationPolicy& policy) {
  std::size_t max_count = 0;
  for (const auto& label : train.class_order()) {
    max_count = std::max(max_count, train.class_size(label));
  }
  const double raw = policy.size_multiplier * static_cast<double>(max_count);
  const long long rounded = std::llround(raw);
  return rounded > 0 ? static_cast<std::size_t>(rounded) : 0;
}

}  // namespace

void AugmentationPolicy::validate() const {
  if (neighbor_count == 0) {
    throw std::invalid_argument("neighbor_count must be positive");
  }
  if (boosted_count == 0 || boosted_count > neighbor_count) {
    throw std::invalid_argument("boosted_count must be in [1, neighbor_count]");
  }
  for (double w : {seed_weight, boosted_weight, residual_mass}) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
  if (!std::isfinite(size_multiplier) || size_multiplier <= 0.0) {
    throw std::invalid_argument("size_multiplier must be positive");
  }
}

SelectedSubset average_selected_weights(std::span<const TimeSeries> class_members,
                                        std::size_t seed_index,
                                        const AugmentationPolicy& policy, SplitMix64& rng) {
  policy.validate();
  if (class_members.size() < 2) {
    throw std::invalid_argument("class must have at least two members to select neighbors");
  }
  if (seed_index >= class_members.size()) {
    throw std::invalid_argument("seed index out of range");
  }
  return pick_subset(rank_neighbors(class_members, seed_index), seed_index, policy, rng);
}

SyntheticBatch generate_synthetic(const LabeledDataset& train, const std::string& label,
                                  std::size_t count, const AugmentationPolicy& policy,
                                  const DbaOptions& dba_options) {
  policy.validate();
  const std::size_t class_id = train.class_id(label);
  const auto members = gather_class(train, label);
  if (members.size() == 1) {
    return {{}, true};
  }

  SyntheticBatch batch;
  batch.series.reserve(count);
  // Rankings are pure functions of the class, so they are shared across
  // generations that draw the same seed.
  std::vector<std::optional<std::vector<std::size_t>>> rankings(members.size());

  for (std::size_t g = 0; g < count; ++g) {
    SplitMix64 rng(derive_stream(policy.master_seed, class_id, g));
    const std::size_t seed = rng.next_below(members.size());
    if (!rankings[seed]) {
      rankings[seed] = rank_neighbors(members, seed);
    }
    const SelectedSubset selected = pick_subset(*rankings[seed], seed, policy, rng);

    std::vector<TimeSeries> subset;
    subset.reserve(selected.member_indices.size());
    for (std::size_t idx : selected.member_indices) subset.push_back(members[idx]);

    DbaResult result = weighted_dba(subset, selected.weights, members[seed], dba_options);
    batch.series.push_back(std::move(result.average));
  }
  return batch;
}

AugmentationResult augment_dataset(const LabeledDataset& train, const AugmentationPolicy& policy,
                                   const DbaOptions& dba_options) {
  policy.validate();
  if (train.empty()) {
    throw std::invalid_argument("training set must not be empty");
  }

  const std::size_t target = class_target(train, policy);

  AugmentationResult result;
  result.dataset = train;
  for (const auto& label : train.class_order()) {
    const std::size_t original = train.class_size(label);
    const std::size_t need = target > original ? target - original : 0;

    ClassAugmentation record{label, original, target, 0, false};
    if (need > 0) {
      SyntheticBatch batch = generate_synthetic(train, label, need, policy, dba_options);
      record.skipped_singleton = batch.skipped_singleton;
      record.generated = batch.series.size();
      for (auto& series : batch.series) {
        result.dataset.append(label, std::move(series));
      }
    }
    result.per_class.push_back(std::move(record));
  }
  return result;
}

}  // namespace dtwaug
