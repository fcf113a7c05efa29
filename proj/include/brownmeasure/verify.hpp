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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace bm {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed statistic
  double threshold = 0.0;  // bound it is compared against
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  // Quick mode shrinks the Monte Carlo checks (10, 11) to a few seconds.
  bool quick = false;
  std::vector<int> only;  // empty runs everything
};

inline constexpr int kCriterionCount = 11;

CheckResult run_check(int id, const SuiteOptions& opt = {});

// Runs the selected checks in order. on_result fires after each one.
std::vector<CheckResult> run_suite(const SuiteOptions& opt = {},
                                   const std::function<void(const CheckResult&)>& on_result = {});

void print_result_line(std::ostream& os, const CheckResult& r);
void print_table(std::ostream& os, const std::vector<CheckResult>& rs);

bool all_passed(const std::vector<CheckResult>& rs);

}  // namespace bm
