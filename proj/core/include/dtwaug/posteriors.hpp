#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dtwaug {

/// Per-class posterior probabilities: one row per instance, one column per
/// class in class_order. Entries lie in [0, 1] and every row sums to 1
/// within kRowSumTolerance.
class ProbabilityMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-9;

  /// Throws std::invalid_argument when the invariants above do not hold, when
  /// class_order is empty or has duplicates, or when a row's width differs
  /// from the class count.
  ProbabilityMatrix(std::vector<std::string> class_order,
                    std::vector<std::vector<double>> rows);

  const std::vector<std::string>& class_order() const noexcept { return class_order_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return class_order_.size(); }

  /// Per-row argmax label; ties broken by the earlier class in class_order.
  std::vector<std::string> argmax_labels() const;

 private:
  std::vector<std::string> class_order_;
  std::vector<std::vector<double>> rows_;
};

struct EnsembleResult {
  ProbabilityMatrix averaged;
  std::vector<std::string> predictions;
};

/// Element-wise mean of two probability matrices with identical shape and
/// class_order, plus the per-row argmax labels of the mean. Throws
/// std::invalid_argument on shape or class_order mismatch.
EnsembleResult average_posteriors(const ProbabilityMatrix& a, const ProbabilityMatrix& b);

/// Hard predictions as one-hot rows so they can feed the ensemble combiner.
/// Throws std::invalid_argument when a prediction is not in class_order.
ProbabilityMatrix one_hot_posteriors(std::span<const std::string> predictions,
                                     std::vector<std::string> class_order);

/// Text format: first line holds the class labels in column order, each
/// following line one comma-separated probability row. Read applies strict
/// row-sum validation; throws ParseError with line/column diagnostics.
ProbabilityMatrix read_probability_matrix(std::istream& in);

/// Writes the comma-separated text form; values use shortest exact decimal
/// rendering. Throws std::invalid_argument when a label contains a comma or
/// line break.
void write_probability_matrix(const ProbabilityMatrix& matrix, std::ostream& out);

}  // namespace dtwaug
