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

// Runs checks 1 through 11 at full scale. One PASS/FAIL line per check;
// exit status is nonzero if any check fails.

#include <iostream>

#include "brownmeasure/verify.hpp"

int main() {
  bm::SuiteOptions opt;
  const auto rs = bm::run_suite(opt, [](const bm::CheckResult& r) {
    bm::print_result_line(std::cout, r);
    std::cout.flush();
  });
  std::cout << (bm::all_passed(rs) ? "all criteria passed" : "some criteria FAILED") << '\n';
  return bm::all_passed(rs) ? 0 : 1;
}
