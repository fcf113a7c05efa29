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
#include <vector>

#include "brownmeasure/common.hpp"

namespace bm {

using RealFn = std::function<double(double)>;

inline constexpr int kGaussNodes = 64;

// 64-point Gauss-Legendre on [a, b].
double gauss64(const RealFn& f, double a, double b);

// Composite Gauss-Legendre on [a, b], panels halving in width toward b.
// Resolves algebraic endpoint behaviour such as sqrt(b - x).
double gauss_graded(const RealFn& f, double a, double b, int levels);

// Composite Gauss-Legendre with uniform panels.
double gauss_uniform(const RealFn& f, double a, double b, int panels);

// Tabulated CDF of an even density on [-half_width, half_width].
// With clustering the nodes follow x = A sin(pi s / 2), which makes
// square-root endpoint behaviour smooth in s.
class CdfTable {
 public:
  CdfTable() = default;
  CdfTable(const RealFn& density, double half_width, bool clustered, int intervals = 4096, Exec exec = Exec::parallel);

  double operator()(double x) const;
  double quantile(double p) const;
  // Integral of the density before normalization.
  double raw_mass() const { return mass_; }
  double half_width() const { return A_; }
  int intervals() const { return static_cast<int>(F_.size()) - 1; }

 private:
  double s_of_x(double x) const;
  double eval_s(double s) const;

  double A_ = 0.0;
  bool clustered_ = false;
  double mass_ = 0.0;
  std::vector<double> F_;   // CDF at uniform s nodes on [-1, 1]
  std::vector<double> dF_;  // dF/ds at the same nodes
};

// Two-sided Kolmogorov-Smirnov distance between samples and a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace bm
