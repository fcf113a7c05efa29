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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bm::csv {

// 17 significant digits, enough to round-trip a double.
std::string fmt(double v);

void write_header(std::ostream& os, const std::vector<std::string>& cols);
void write_row(std::ostream& os, const std::vector<double>& vals);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read(std::istream& is);
Table read_file(const std::string& path);

}  // namespace bm::csv
