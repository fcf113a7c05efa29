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
#include "brownmeasure/region.hpp"

namespace bm {

// f_t(lambda) = lambda exp((t/2)(1+lambda)/(1-lambda)).
cplx f_t(double t, cplx lambda);

// log|lambda| + (t/2)(1-|lambda|^2)/|lambda-1|^2.
double log_abs_f_t(double t, cplx lambda);

// Half-width of the support arc of nu_t; pi for t > 4.
double phi_max(double t);

// Continuous lift of arg f_t(r_t(theta) e^{i theta}). For t > 4 any theta
// is accepted and no 2 pi wrap is applied.
double phi_of_theta(double t, double theta);

// Inverse of phi_of_theta by bisection.
double theta_of_phi(double t, double phi, double tol = 1e-13);

// Density of nu_t in phi: log(r_t(theta(phi)))/(pi t).
double biane_density(double t, double phi);
// (1/2pi)(r^2-1)/|r e^{i theta} - 1|^2 at theta = theta(phi).
double biane_density_rational(double t, double phi);
// Poisson-kernel form with chi = e^{i theta}/r.
double biane_density_kappa(double t, double phi);

// Phi_t(lambda) = e^{i phi(arg lambda)} on the closure of Sigma_t.
cplx shadow_map(double t, cplx lambda);

// phi(theta) after clamping theta to the closed wedge. Sets *projected when
// the clamp was active.
double shadow_angle(double t, double theta, bool* projected = nullptr);

// max |a_t(theta) - nu_t(phi(theta)) phi'(theta)| on an n-point grid.
double pushforward_check(double t, int n, Exec exec = Exec::parallel);

// Integral of biane_density over the arc.
double nu_mass(double t, int panels = 40);

struct ShadowSample {
  double theta;
  double phi;
};

struct ShadowMap {
  double t = 0.0;
  double phi_max = 0.0;
  RegionBoundary boundary;
  std::vector<ShadowSample> samples;
};

ShadowMap make_shadow_map(double t, int n, Exec exec = Exec::parallel);

void write_shadow_csv(std::ostream& os, const ShadowMap& s);
// n-point phi grid of nu_t on the open arc.
void write_nu_csv(std::ostream& os, double t, int n);

}  // namespace bm
