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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bm::cli {

struct RunConfig {
  std::string subcommand;
  double t = 1.0;
  int n = 256;
  int N = 100;
  int steps = 0;  // 0 picks max(100, ceil(100 t))
  int samples = 1;
  std::uint64_t seed = 7;
  std::string out = ".";
  std::string route = "omega";
  bool quick = false;
  bool svg = false;
  std::string group = "GL";
  double tol_dilate = 0.05;
  double a0 = 0.5;
  double b0 = 0.5;
  double x0 = 0.5;
  double frac = 0.95;  // hj integrates to frac * t_star
  std::vector<int> only;
};

// Throws ConfigError on any invalid field.
void validate(const RunConfig& c);

std::string to_json(const RunConfig& c);

// Overlays keys present in a JSON object onto base.
RunConfig merge_json(const std::string& text, RunConfig base);

// 0 success, 1 a failed check or numerical error, 2 a config error.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace bm::cli
