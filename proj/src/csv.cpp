/* Copyright 2026 The brownmeasure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "brownmeasure/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bm::csv {

std::string fmt(double v) {
  char buf[40];
  int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<size_t>(n));
}

void write_header(std::ostream& os, const std::vector<std::string>& cols) {
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) os << ',';
    os << cols[i];
  }
  os << '\n';
}

void write_row(std::ostream& os, const std::vector<double>& vals) {
  std::string line;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) line += ',';
    line += fmt(vals[i]);
  }
  line += '\n';
  os << line;
}

static std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

Table read(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header row");
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw std::runtime_error("csv: ragged row with " + std::to_string(cells.size()) + " cells");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      double v = 0.0;
      auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc()) throw std::runtime_error("csv: bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("csv: cannot open " + path);
  return read(f);
}

}  // namespace bm::csv
