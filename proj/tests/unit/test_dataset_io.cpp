#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "dtwaug/dataset.hpp"
#include "dtwaug/dataset_io.hpp"
#include "dtwaug/errors.hpp"
#include "dtwaug/text.hpp"
#include "dtwaug/time_series.hpp"

using dtwaug::LabeledDataset;
using dtwaug::ParseError;
using dtwaug::read_dataset;
using dtwaug::render_double;
using dtwaug::TimeSeries;
using dtwaug::write_dataset;

namespace {

void check_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  std::stringstream in(text);
  try {
    read_dataset(in);
    FAIL("expected ParseError for: ", text);
  } catch (const ParseError& e) {
    CAPTURE(text);
    CAPTURE(e.what());
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_SUITE("time_series") {

TEST_CASE("construction validates the values once and for all") {
  CHECK_NOTHROW(TimeSeries({1.0, -2.5, 0.0}));
  CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({1.0, std::nan(""), 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("accessors") {
  const TimeSeries s({3.0, 1.0, 2.0});
  CHECK(s.length() == 3);
  CHECK(s[1] == 1.0);
  CHECK(s.values() == std::vector<double>{3.0, 1.0, 2.0});
  CHECK(s.view().size() == 3);
  CHECK(s == TimeSeries({3.0, 1.0, 2.0}));
  CHECK(s != TimeSeries({3.0, 1.0}));
}

}  // TEST_SUITE("time_series")

TEST_SUITE("dataset") {

TEST_CASE("classes are tracked in first-appearance order") {
  LabeledDataset ds;
  ds.append("b", TimeSeries({1.0}));
  ds.append("a", TimeSeries({2.0}));
  ds.append("b", TimeSeries({3.0, 4.0}));
  ds.append("c", TimeSeries({5.0}));

  CHECK(ds.size() == 4);
  CHECK(ds.class_count() == 3);
  CHECK(ds.class_order() == std::vector<std::string>{"b", "a", "c"});
  CHECK(ds.class_id("a") == 1);
  CHECK(ds.class_instances("b") == std::vector<std::size_t>{0, 2});
  CHECK(ds.class_size("b") == 2);
  CHECK(ds.has_class("c"));
  CHECK_FALSE(ds.has_class("d"));
  CHECK_THROWS_AS(ds.class_id("d"), std::invalid_argument);
  CHECK_THROWS_AS(ds.class_instances("d"), std::invalid_argument);
}

TEST_CASE("labels are exact tokens, not numbers") {
  LabeledDataset ds;
  ds.append("1", TimeSeries({1.0}));
  ds.append("1.0", TimeSeries({2.0}));
  ds.append("01", TimeSeries({3.0}));
  CHECK(ds.class_count() == 3);
}

}  // TEST_SUITE("dataset")

TEST_SUITE("dataset_io") {

TEST_CASE("reads tab-separated lines with auto-detection") {
  std::stringstream in("walk\t1.0\t2.5\t-3\nrun\t4\t5e-1\n");
  const auto result = read_dataset(in, std::nullopt, "gait");
  CHECK(result.delimiter == '\t');
  CHECK(result.dataset.name() == "gait");
  REQUIRE(result.dataset.size() == 2);
  CHECK(result.dataset[0].label == "walk");
  CHECK(result.dataset[0].series == TimeSeries({1.0, 2.5, -3.0}));
  CHECK(result.dataset[1].label == "run");
  CHECK(result.dataset[1].series == TimeSeries({4.0, 0.5}));
}

TEST_CASE("falls back to comma detection") {
  std::stringstream in("A,1,2\nB,3,4\n");
  const auto result = read_dataset(in);
  CHECK(result.delimiter == ',');
  CHECK(result.dataset.class_order() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("tab wins when both separators appear on the first line") {
  std::stringstream in("A\t1\t2\nB\t3\t4\n");
  CHECK(read_dataset(in).delimiter == '\t');
  std::stringstream mixed("A\t1,5\t2\n");
  CHECK_THROWS_AS(read_dataset(mixed), ParseError);  // "1,5" is not a number
}

TEST_CASE("a forced delimiter skips detection") {
  std::stringstream in("A,1,2\n");
  const auto result = read_dataset(in, ',');
  CHECK(result.delimiter == ',');
  std::stringstream wrong("A,1,2\n");
  CHECK_THROWS_AS(read_dataset(wrong, '\t'), ParseError);  // one field only
}

TEST_CASE("accepts CRLF endings, blank lines, and ragged lengths") {
  std::stringstream in("A\t1\t2\t3\r\n\r\nB\t5\r\n");
  const auto result = read_dataset(in);
  REQUIRE(result.dataset.size() == 2);
  CHECK(result.dataset[0].series.length() == 3);
  CHECK(result.dataset[1].series.length() == 1);
  CHECK(result.dataset[1].label == "B");
}

TEST_CASE("parse errors carry the offending line and column") {
  check_parse_error("", 1, 1);
  check_parse_error("\n\n", 2, 1);                // only blank lines: empty dataset
  check_parse_error("justalabel\n", 1, 1);        // no delimiter to detect
  check_parse_error("A\t1\nB\n", 2, 1);           // label without values
  check_parse_error("A\t1\tx2\n", 1, 5);          // malformed number
  check_parse_error("A\t1\t\t2\n", 1, 5);         // empty value field
  check_parse_error("\t1\t2\n", 1, 1);            // empty label
  check_parse_error("A\t1\nB\tnan\n", 2, 3);      // non-finite value
  check_parse_error("A\t1\nB\tinf\n", 2, 3);
}

TEST_CASE("write then read reproduces the dataset exactly") {
  LabeledDataset ds("synthetic");
  ds.append("alpha", TimeSeries({1.0 / 3.0, 0.1, -2.5e-7}));
  ds.append("beta", TimeSeries({1e300, -0.0, 42.0}));
  ds.append("alpha", TimeSeries({7.0}));

  for (char delimiter : {'\t', ','}) {
    std::stringstream io;
    write_dataset(ds, io, delimiter);
    const auto result = read_dataset(io);
    CAPTURE(delimiter);
    CHECK(result.delimiter == delimiter);
    CHECK(result.dataset == ds);
  }
}

TEST_CASE("writes are byte-stable") {
  LabeledDataset ds;
  ds.append("x", TimeSeries({0.1, 0.2, 0.30000000000000004}));
  std::stringstream first;
  std::stringstream second;
  write_dataset(ds, first);
  write_dataset(ds, second);
  CHECK(first.str() == second.str());
  CHECK(first.str() == "x\t0.1\t0.2\t0.30000000000000004\n");
}

TEST_CASE("write rejects unrepresentable content") {
  std::stringstream out;
  CHECK_THROWS_AS(write_dataset(LabeledDataset{}, out), std::invalid_argument);

  LabeledDataset tabbed;
  tabbed.append("bad\tlabel", TimeSeries({1.0}));
  CHECK_THROWS_AS(write_dataset(tabbed, out, '\t'), std::invalid_argument);
  CHECK_NOTHROW(write_dataset(tabbed, out, ','));
}

TEST_CASE("shortest-round-trip rendering") {
  CHECK(render_double(3.0) == "3");
  CHECK(render_double(0.1) == "0.1");
  CHECK(render_double(-2.5) == "-2.5");
  CHECK(render_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(render_double(5e-324) == "5e-324");
}

}  // TEST_SUITE("dataset_io")
