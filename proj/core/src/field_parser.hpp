#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dtwaug/errors.hpp"

namespace dtwaug::detail {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based position of the field's first character
};

inline std::vector<Field> split_fields(std::string_view line, char delimiter) {
  std::vector<Field> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find(delimiter, start);
    if (end == std::string_view::npos) {
      fields.push_back({line.substr(start), start + 1});
      return fields;
    }
    fields.push_back({line.substr(start, end - start), start + 1});
    start = end + 1;
  }
}

inline double parse_value(const Field& field, std::size_t line_no) {
  if (field.text.empty()) {
    throw ParseError(line_no, field.column, "empty value field (missing values are not supported)");
  }
  double value = 0.0;
  const char* first = field.text.data();
  const char* last = first + field.text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(line_no, field.column,
                     "malformed numeric field '" + std::string(field.text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, field.column,
                     "non-finite value '" + std::string(field.text) + "'");
  }
  return value;
}

}  // namespace dtwaug::detail
