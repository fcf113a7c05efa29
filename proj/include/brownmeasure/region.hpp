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
#include <vector>

#include "brownmeasure/common.hpp"

namespace bm {

inline constexpr double kRootTol = 1e-12;
inline constexpr double kBandTol = 1e-9;

// log(r^2)/(r^2-1), continuous at r = 1.
double log_ratio(double r);

// T(r, theta) = |re^{i theta} - 1|^2 log(r^2)/(r^2-1).
double gobbling_time(double r, double theta);
inline double gobbling_time(PolarPoint p) { return gobbling_time(p.r, p.theta); }
double gobbling_time(cplx lambda);

// Closed-form dT/dr, switching to the h-form near r = 1.
double gobbling_time_dr(double r, double theta);

double theta_max(double t);

// Larger root of T(r, theta) = t. Throws OutOfWedgeError outside the open wedge.
double outer_radius(double t, double theta, double tol = kRootTol);

// Same as outer_radius but returns the limit 1 on the closed wedge edge.
double outer_radius_closed(double t, double theta, double tol = kRootTol);

enum class Membership { inside, boundary, outside };

const char* to_string(Membership m);

Membership contains(double t, PolarPoint p, double band = kBandTol);
Membership contains(double t, cplx lambda, double band = kBandTol);

struct BoundarySample {
  double theta;
  double r_outer;
};

struct RegionBoundary {
  double t = 0.0;
  double theta_max = 0.0;
  double tol = kRootTol;
  // True for t <= 4: the curve meets the unit circle at +-theta_max, where r = 1.
  bool closes_on_circle = false;
  double cutoff_radius = 1.0;
  std::vector<BoundarySample> samples;
};

// n samples symmetric in theta, increasing order. Chebyshev nodes on the
// open wedge when t <= 4, midpoint nodes on the circle otherwise.
RegionBoundary sample_boundary(double t, int n, Exec exec = Exec::parallel);

std::vector<double> boundary_thetas(double t, int n);

void write_boundary_csv(std::ostream& os, const RegionBoundary& b);
void write_boundary_svg(std::ostream& os, const RegionBoundary& b);

}  // namespace bm
