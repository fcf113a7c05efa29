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

#include "brownmeasure/common.hpp"
#include "brownmeasure/region.hpp"

namespace bm {

// h(r) = r log(r^2)/(r^2-1) and its derivative.
double h_of_r(double r);
double h_prime(double r);
// c(r) = (1 - h(r))/(r-1)^2.
double c_of_r(double r);

struct OmegaParts {
  double h;
  double c;
  double alpha;
  double beta;
  double alpha_tilde;
  double beta_tilde;
};

OmegaParts omega_parts(double r);

double omega(double r, double theta);

enum class Route { omega, theta_derivative, phi_jacobian };

const char* to_string(Route r);
Route route_from_string(const std::string& s);

// Angular factor w_t(theta). Requires |theta| < theta_max(t).
double w_of_theta(double t, double theta, Route route = Route::omega);

// Omega route on the closed wedge; at the edge r_t = 1.
double w_closed(double t, double theta);

struct DensityValue {
  double value;
  Membership where;
};

// W_t = w_t/r^2 inside, 0 outside; boundary points carry the inside limit.
DensityValue brown_density(double t, PolarPoint p);

// a_t = 2 log(r_t) w_t on the closed wedge.
double angular_marginal(double t, double theta);

// Gauss-Legendre integral of a_t over the wedge.
double total_mass(double t, int panels = 40);

struct DensityRow {
  double theta;
  double r_t;
  double w_t;
  double a_t;
};

struct DensityGrid {
  double t = 0.0;
  int n = 0;
  Route route = Route::omega;
  double tol = kRootTol;
  std::vector<DensityRow> rows;
};

DensityGrid density_grid(double t, int n, Route route = Route::omega, Exec exec = Exec::parallel);

void write_density_csv(std::ostream& os, const DensityGrid& g);
void write_density_json(std::ostream& os, const DensityGrid& g);

}  // namespace bm
