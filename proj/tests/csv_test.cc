// Copyright 2026 The BRFP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "brfp/csv.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "brfp/error.h"

namespace brfp::csv {
namespace {

TEST(CsvTableTest, ParsesHeaderAndRows) {
  const Table t = Table::parse("a,b\n1,2.5\n3,\n");
  ASSERT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.number(0, 1), 2.5);
  EXPECT_EQ(t.integer(1, 0), 3);
  EXPECT_EQ(t.cell(1, 1), "");
  EXPECT_EQ(t.line(1), 3);
  EXPECT_TRUE(t.has_column("a"));
  EXPECT_FALSE(t.has_column("c"));
  EXPECT_THROW(t.column("c"), InvalidInput);
}

TEST(CsvTableTest, RowLengthMismatchReportsLine) {
  try {
    Table::parse("a,b\n1,2\n3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(CsvTableTest, BadNumberReportsLine) {
  const Table t = Table::parse("a\n1\nx\n");
  try {
    t.number(1, 0);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(Table::parse("a\n1.5\n").integer(0, 0), ParseError);
}

TEST(CsvTableTest, EmptyTextIsRejected) {
  EXPECT_THROW(Table::parse(""), ParseError);
}

TEST(CsvTableTest, MissingFileIsIoError) {
  EXPECT_THROW(Table::read("/nonexistent/dir/file.csv"), IoError);
}

TEST(CsvNumberTest, SpecialTokensRoundTrip) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(format_number(inf), "+inf");
  EXPECT_EQ(format_number(-inf), "-inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(parse_number("+inf"), inf);
  EXPECT_EQ(parse_number("-inf"), -inf);
  EXPECT_TRUE(std::isnan(parse_number("nan")));
}

TEST(CsvNumberTest, SeventeenDigitsRoundTripExactly) {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(parse_number(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(CsvWriterTest, WritesHeaderAndChecksWidth) {
  Writer w({"x", "y"});
  w.row({field(1), field(0.5)});
  EXPECT_EQ(w.str(), "x,y\n1,0.5\n");
  EXPECT_THROW(w.row({"1"}), InvalidInput);
}

TEST(CsvWriterTest, SaveRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "brfp_csv_test.csv";
  Writer w({"v"});
  w.row({field(-1.25)});
  w.save(path);
  const Table t = Table::read(path);
  EXPECT_EQ(t.number(0, 0), -1.25);
  std::filesystem::remove(path);
  EXPECT_THROW(w.save("/nonexistent/dir/out.csv"), IoError);
}

}  // namespace
}  // namespace brfp::csv
