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

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "brfp/error.h"

namespace brfp::csv {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

}  // namespace

Table Table::parse(std::string_view text, const std::string& source) {
  Table table;
  table.source_ = source;
  long line_number = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    ++line_number;
    pos = end + 1;
    if (trim(raw).empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<std::string> fields = split(raw);
    if (!have_header) {
      table.header_ = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != table.header_.size()) {
        throw ParseError(source + ": expected " +
                             std::to_string(table.header_.size()) +
                             " fields, found " + std::to_string(fields.size()),
                         line_number);
      }
      table.rows_.push_back(std::move(fields));
      table.lines_.push_back(line_number);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(source + ": missing header row", 0);
  return table;
}

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return parse(buffer.str(), path.string());
}

bool Table::has_column(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw ParseError(source_ + ": missing column '" + std::string(name) + "'", 1);
}

double Table::number(std::size_t row, std::size_t col) const {
  try {
    return parse_number(rows_[row][col]);
  } catch (const InvalidInput& e) {
    throw ParseError(source_ + ": " + e.what(), lines_[row]);
  }
}

long Table::integer(std::size_t row, std::size_t col) const {
  const std::string& text = rows_[row][col];
  char* end = nullptr;
  errno = 0;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || errno != 0 || end != text.c_str() + text.size()) {
    throw ParseError(source_ + ": '" + text + "' is not an integer",
                     lines_[row]);
  }
  return value;
}

Eigen::VectorXd Table::numeric_column(std::string_view name) const {
  const std::size_t col = column(name);
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows()));
  for (std::size_t r = 0; r < rows(); ++r) out[r] = number(r, col);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_number(std::string_view text) {
  const std::string s = trim(text);
  if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw InvalidInput("'" + s + "' is not a number");
  }
  return value;
}

Writer::Writer(std::vector<std::string> header) : columns_(header.size()) {
  row(header);
}

Writer& Writer::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw InvalidInput("csv writer: row has " + std::to_string(fields.size()) +
                       " fields, header has " + std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += fields[i];
  }
  text_ += '\n';
  return *this;
}

std::string Writer::str() const { return text_; }

void Writer::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text_;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string field(double value) { return format_number(value); }
std::string field(long value) { return std::to_string(value); }
std::string field(std::string_view value) { return std::string(value); }

}  // namespace brfp::csv
