#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dtwaug/dataset.hpp"
#include "dtwaug/dba.hpp"
#include "dtwaug/rng.hpp"
#include "dtwaug/time_series.hpp"

namespace dtwaug {

/// Parameters of the synthetic-generation policy. The defaults give the
/// weighting 0.5 / 2x0.15 / 0.2 over a seed and its 5 nearest neighbors, and
/// raise every class to twice the size of the most represented class.
struct AugmentationPolicy {
  std::size_t neighbor_count = 5;
  std::size_t boosted_count = 2;
  double seed_weight = 0.5;
  double boosted_weight = 0.15;
  double residual_mass = 0.2;
  /// Per-class target = round(size_multiplier * most represented class size).
  double size_multiplier = 2.0;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument when structurally invalid (zero neighbor
  /// count, boosted_count > neighbor_count, negative or non-finite weights,
  /// non-positive multiplier).
  void validate() const;
};

/// Subset chosen for one synthetic series: the seed followed by its ranked
/// nearest neighbors. Weight entries index positions in member_indices.
struct SelectedSubset {
  std::vector<std::size_t> member_indices;  // positions within the class; [0] is the seed
  WeightAssignment weights;
};

/// Average Selected weighting: the seed gets seed_weight, boosted_count
/// randomly chosen members of its neighbor_count DTW-nearest in-class
/// neighbors get boosted_weight each, and the remaining neighbors share
/// residual_mass equally. Neighbor ranking ties are broken by smaller index.
///
/// With fewer neighbors than requested, k' = min(neighbor_count, n-1) and
/// b = min(boosted_count, k') are used; if the nominal weights then do not
/// sum to 1 the whole vector is renormalized by its sum.
///
/// Throws std::invalid_argument when the class has fewer than two members or
/// seed_index is out of range.
SelectedSubset average_selected_weights(std::span<const TimeSeries> class_members,
                                        std::size_t seed_index,
                                        const AugmentationPolicy& policy, SplitMix64& rng);

struct SyntheticBatch {
  std::vector<TimeSeries> series;
  /// True when the class is a singleton and generation was skipped.
  bool skipped_singleton = false;
};

/// Generates `count` synthetic series for one class of the training set.
/// Each series draws a uniform-random in-class seed (with replacement across
/// generations), assigns Average Selected weights, and runs weighted DBA
/// initialized with the seed series; the output keeps the seed's length and
/// the class's label stays valid for it.
///
/// Randomness comes from a substream keyed by (master_seed, class id,
/// generation index), so results are deterministic and independent of
/// generation order. Throws std::invalid_argument for an unknown label.
SyntheticBatch generate_synthetic(const LabeledDataset& train, const std::string& label,
                                  std::size_t count, const AugmentationPolicy& policy,
                                  const DbaOptions& dba_options = {});

struct ClassAugmentation {
  std::string label;
  std::size_t original_count = 0;
  std::size_t target = 0;
  std::size_t generated = 0;
  bool skipped_singleton = false;
};

struct AugmentationResult {
  /// Original instances first, unchanged and in original order; synthetic
  /// instances follow, ordered by (class, generation index).
  LabeledDataset dataset;
  /// One entry per class, in class_order.
  std::vector<ClassAugmentation> per_class;
};

/// Raises every class to the policy's per-class target by appending synthetic
/// series. Singleton classes are skipped and reported, not an error.
/// Deterministic given (train, policy, dba_options).
AugmentationResult augment_dataset(const LabeledDataset& train, const AugmentationPolicy& policy,
                                   const DbaOptions& dba_options = {});

}  // namespace dtwaug
