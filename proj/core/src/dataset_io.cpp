#include "dtwaug/dataset_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtwaug/text.hpp"
#include "field_parser.hpp"

namespace dtwaug {

namespace {

// Strips one trailing CR so CRLF input parses like LF input.
inline std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

char detect_delimiter(std::string_view line, std::size_t line_no) {
  if (line.find('\t') != std::string_view::npos) return '\t';
  if (line.find(',') != std::string_view::npos) return ',';
  throw ParseError(line_no, 1, "cannot detect delimiter: line contains neither tab nor comma");
}

void check_label(const std::string& label, char delimiter) {
  if (label.empty()) {
    throw std::invalid_argument("labels must not be empty");
  }
  if (label.find(delimiter) != std::string::npos || label.find('\n') != std::string::npos ||
      label.find('\r') != std::string::npos) {
    throw std::invalid_argument("label '" + label + "' contains the delimiter or a line break");
  }
}

}  // namespace

ReadResult read_dataset(std::istream& in, std::optional<char> delimiter, std::string name) {
  LabeledDataset dataset(std::move(name));
  char sep = delimiter.value_or('\0');

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = chomp(raw);
    if (line.empty()) continue;

    if (sep == '\0') sep = detect_delimiter(line, line_no);

    const auto fields = detail::split_fields(line, sep);
    if (fields[0].text.empty()) {
      throw ParseError(line_no, fields[0].column, "empty label field");
    }
    if (fields.size() < 2) {
      throw ParseError(line_no, 1, "expected a label followed by at least one value");
    }
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      values.push_back(detail::parse_value(fields[f], line_no));
    }
    dataset.append(std::string(fields[0].text), TimeSeries(std::move(values)));
  }

  if (dataset.empty()) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "dataset is empty");
  }
  return {std::move(dataset), sep};
}

void write_dataset(const LabeledDataset& dataset, std::ostream& out, char delimiter) {
  if (dataset.empty()) {
    throw std::invalid_argument("cannot write an empty dataset");
  }
  for (const auto& instance : dataset.instances()) {
    check_label(instance.label, delimiter);
    out << instance.label;
    for (double v : instance.series.values()) {
      out << delimiter << render_double(v);
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed to write dataset");
  }
}

}  // namespace dtwaug
