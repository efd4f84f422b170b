#include "dtwaug/posteriors.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dtwaug/errors.hpp"
#include "dtwaug/text.hpp"
#include "field_parser.hpp"

namespace dtwaug {

namespace {

std::unordered_map<std::string, std::size_t> column_index(
    const std::vector<std::string>& class_order) {
  std::unordered_map<std::string, std::size_t> columns;
  for (std::size_t c = 0; c < class_order.size(); ++c) {
    columns.emplace(class_order[c], c);
  }
  return columns;
}

}  // namespace

ProbabilityMatrix::ProbabilityMatrix(std::vector<std::string> class_order,
                                     std::vector<std::vector<double>> rows)
    : class_order_(std::move(class_order)), rows_(std::move(rows)) {
  if (class_order_.empty()) {
    throw std::invalid_argument("class order must not be empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : class_order_) {
    if (label.empty() || !seen.insert(label).second) {
      throw std::invalid_argument("class labels must be nonempty and distinct");
    }
  }
  for (const auto& row : rows_) {
    if (row.size() != class_order_.size()) {
      throw std::invalid_argument("row width must equal the number of classes");
    }
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("probabilities must lie in [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("every probability row must sum to 1");
    }
  }
}

std::vector<std::string> ProbabilityMatrix::argmax_labels() const {
  std::vector<std::string> labels;
  labels.reserve(rows_.size());
  for (const auto& row : rows_) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;  // strict: ties keep the earlier class
    }
    labels.push_back(class_order_[best]);
  }
  return labels;
}

EnsembleResult average_posteriors(const ProbabilityMatrix& a, const ProbabilityMatrix& b) {
  if (a.class_order() != b.class_order()) {
    throw std::invalid_argument("probability matrices have different class orders");
  }
  if (a.row_count() != b.row_count()) {
    throw std::invalid_argument("probability matrices have different row counts");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(a.row_count());
  for (std::size_t r = 0; r < a.row_count(); ++r) {
    std::vector<double> row(a.column_count());
    for (std::size_t c = 0; c < a.column_count(); ++c) {
      row[c] = (a.rows()[r][c] + b.rows()[r][c]) / 2.0;
    }
    rows.push_back(std::move(row));
  }
  ProbabilityMatrix averaged(a.class_order(), std::move(rows));
  auto predictions = averaged.argmax_labels();
  return {std::move(averaged), std::move(predictions)};
}

ProbabilityMatrix one_hot_posteriors(std::span<const std::string> predictions,
                                     std::vector<std::string> class_order) {
  const auto columns = column_index(class_order);
  std::vector<std::vector<double>> rows;
  rows.reserve(predictions.size());
  for (const auto& label : predictions) {
    const auto it = columns.find(label);
    if (it == columns.end()) {
      throw std::invalid_argument("prediction '" + label + "' is not in the class order");
    }
    std::vector<double> row(class_order.size(), 0.0);
    row[it->second] = 1.0;
    rows.push_back(std::move(row));
  }
  return ProbabilityMatrix(std::move(class_order), std::move(rows));
}

ProbabilityMatrix read_probability_matrix(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;

  std::vector<std::string> class_order;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    const auto fields = detail::split_fields(line, ',');
    if (class_order.empty()) {
      for (const auto& field : fields) {
        if (field.text.empty()) {
          throw ParseError(line_no, field.column, "empty class label");
        }
        class_order.emplace_back(field.text);
      }
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    double sum = 0.0;
    for (const auto& field : fields) {
      const double p = detail::parse_value(field, line_no);
      if (p < 0.0 || p > 1.0) {
        throw ParseError(line_no, field.column, "probability outside [0, 1]");
      }
      sum += p;
      row.push_back(p);
    }
    if (row.size() != class_order.size()) {
      throw ParseError(line_no, 1, "row has " + std::to_string(row.size()) +
                                       " columns, expected " +
                                       std::to_string(class_order.size()));
    }
    if (std::abs(sum - 1.0) > ProbabilityMatrix::kRowSumTolerance) {
      throw ParseError(line_no, 1, "row does not sum to 1");
    }
    rows.push_back(std::move(row));
  }
  if (class_order.empty()) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "probability file is empty");
  }
  return ProbabilityMatrix(std::move(class_order), std::move(rows));
}

void write_probability_matrix(const ProbabilityMatrix& matrix, std::ostream& out) {
  for (std::size_t c = 0; c < matrix.class_order().size(); ++c) {
    const auto& label = matrix.class_order()[c];
    if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos ||
        label.find('\r') != std::string::npos) {
      throw std::invalid_argument("label '" + label + "' contains a comma or line break");
    }
    if (c > 0) out << ',';
    out << label;
  }
  out << '\n';
  for (const auto& row : matrix.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << render_double(row[c]);
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed to write probability matrix");
  }
}

}  // namespace dtwaug
