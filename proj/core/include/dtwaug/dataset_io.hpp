#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dtwaug/dataset.hpp"
#include "dtwaug/errors.hpp"

namespace dtwaug {

struct ReadResult {
  LabeledDataset dataset;
  char delimiter;  // the forced or auto-detected field separator
};

/// Reads a labeled dataset in the UCR archive's delimited-text convention:
/// each nonempty line is a label token, the delimiter, then one or more
/// numeric values. Labels are kept as exact tokens. LF and CRLF line endings
/// are accepted. When no delimiter is forced, tab is detected first, then
/// comma. Missing-value fields and non-finite values are rejected.
/// Throws ParseError with 1-based line/column diagnostics; an empty input is
/// an error.
ReadResult read_dataset(std::istream& in, std::optional<char> delimiter = std::nullopt,
                        std::string name = {});

/// Writes the delimited-text form with LF line endings. Values use shortest
/// exact decimal rendering, so read_dataset(write_dataset(d)) reproduces d
/// value-for-value and two writes of the same dataset are byte-identical.
/// Throws std::invalid_argument on an empty dataset or a label containing
/// the delimiter or a line break.
void write_dataset(const LabeledDataset& dataset, std::ostream& out, char delimiter = '\t');

}  // namespace dtwaug
