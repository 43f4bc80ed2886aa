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

#ifndef BRFP_CSV_H_
#define BRFP_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace brfp::csv {

// Fields are comma separated, no quoting. The first line is a mandatory
// header. Blank lines are skipped.
class Table {
 public:
  static Table parse(std::string_view text, const std::string& source = "");
  static Table read(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  bool has_column(std::string_view name) const;
  std::size_t column(std::string_view name) const;

  const std::string& cell(std::size_t row, std::size_t col) const {
    return rows_[row][col];
  }
  // Parsed as a double; "+inf", "-inf", "inf" and "nan" are accepted.
  double number(std::size_t row, std::size_t col) const;
  long integer(std::size_t row, std::size_t col) const;
  // Line number of a data row in the source (1-based, header is line 1).
  long line(std::size_t row) const { return lines_[row]; }

  Eigen::VectorXd numeric_column(std::string_view name) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<long> lines_;
};

// 17 significant digits; infinities and NaN as "+inf", "-inf", "nan".
std::string format_number(double value);
double parse_number(std::string_view text);

// Accumulates rows in memory. Nothing touches the filesystem until save().
class Writer {
 public:
  explicit Writer(std::vector<std::string> header);

  Writer& row(const std::vector<std::string>& fields);
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

// Fields helper: numbers formatted with format_number, strings verbatim.
std::string field(double value);
std::string field(long value);
inline std::string field(int value) { return field(static_cast<long>(value)); }
std::string field(std::string_view value);

}  // namespace brfp::csv

#endif  // BRFP_CSV_H_
