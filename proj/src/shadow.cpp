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

#include "brownmeasure/shadow.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/density.hpp"
#include "brownmeasure/quadrature.hpp"

namespace bm {

cplx f_t(double t, cplx lambda) {
  if (lambda == cplx(1.0, 0.0)) throw PoleError("f_t: pole at lambda = 1");
  return lambda * std::exp(0.5 * t * (1.0 + lambda) / (1.0 - lambda));
}

double log_abs_f_t(double t, cplx lambda) {
  if (lambda == cplx(1.0, 0.0)) throw PoleError("log_abs_f_t: pole at lambda = 1");
  const double m2 = std::norm(lambda);
  return 0.5 * std::log(m2) + 0.5 * t * (1.0 - m2) / std::norm(lambda - 1.0);
}

double phi_max(double t) {
  if (!(t > 0.0)) throw DomainError("phi_max: t must be positive");
  if (t > 4.0) return kPi;
  return 0.5 * std::sqrt(t * (4.0 - t)) + std::acos(1.0 - 0.5 * t);
}

double phi_of_theta(double t, double theta) {
  double r;
  if (t <= 4.0) {
    const double tm = theta_max(t);
    if (std::abs(theta) > tm) {
      std::ostringstream ss;
      ss.precision(17);
      ss << "phi_of_theta: |theta|=" << std::abs(theta) << " exceeds theta_max=" << tm;
      throw OutOfWedgeError(ss.str());
    }
    r = std::abs(theta) == tm ? 1.0 : outer_radius(t, theta);
  } else {
    r = outer_radius(t, theta);
  }
  const double s = std::sin(0.5 * theta);
  const double den = (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
  return theta + t * r * std::sin(theta) / den;
}

double theta_of_phi(double t, double phi, double tol) {
  const double pm = phi_max(t);
  if (t > 4.0) phi = normalize_angle(phi);
  if (std::abs(phi) > pm) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "theta_of_phi: |phi|=" << std::abs(phi) << " outside the arc, phi_max=" << pm;
    throw OutOfWedgeError(ss.str());
  }
  if (phi == 0.0) return 0.0;
  double lo = 0.0, hi = theta_max(t);
  const double target = std::abs(phi);
  if (target == pm) return std::copysign(hi, phi);
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi_of_theta(t, mid) < target ? lo : hi) = mid;
  }
  return std::copysign(0.5 * (lo + hi), phi);
}

double biane_density(double t, double phi) {
  const double th = theta_of_phi(t, phi);
  const double r = outer_radius_closed(t, th);
  return std::log(r) / (kPi * t);
}

double biane_density_rational(double t, double phi) {
  const double th = theta_of_phi(t, phi);
  const double r = outer_radius_closed(t, th);
  const double s = std::sin(0.5 * th);
  const double den = (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
  return (r - 1.0) * (r + 1.0) / den / (2.0 * kPi);
}

double biane_density_kappa(double t, double phi) {
  const double th = theta_of_phi(t, phi);
  const double r = outer_radius_closed(t, th);
  const cplx chi = std::polar(1.0 / r, th);
  return (1.0 - std::norm(chi)) / std::norm(1.0 - chi) / (2.0 * kPi);
}

double shadow_angle(double t, double theta, bool* projected) {
  theta = normalize_angle(theta);
  bool clamp = false;
  if (t <= 4.0) {
    const double tm = theta_max(t);
    if (std::abs(theta) > tm) {
      theta = std::copysign(tm, theta);
      clamp = true;
    }
  }
  if (projected) *projected = clamp;
  return phi_of_theta(t, theta);
}

cplx shadow_map(double t, cplx lambda) {
  if (lambda == cplx(0.0, 0.0)) throw OutsideDomainError("shadow_map: lambda = 0 is outside the closure");
  if (contains(t, lambda) == Membership::outside) throw OutsideDomainError("shadow_map: lambda outside the closure");
  return std::polar(1.0, shadow_angle(t, std::arg(lambda)));
}

double pushforward_check(double t, int n, Exec exec) {
  const auto th = boundary_thetas(t, n);
  std::vector<double> err(th.size());
  const long m = static_cast<long>(th.size());
  auto body = [&](long k) {
    const double a = angular_marginal(t, th[k]);
    const double dphi = 2.0 * kPi * t * w_of_theta(t, th[k], Route::phi_jacobian);
    const double nu = biane_density(t, phi_of_theta(t, th[k]));
    err[k] = std::abs(a - nu * dphi);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < m; ++k) body(k);
  } else {
    for (long k = 0; k < m; ++k) body(k);
  }
  return *std::max_element(err.begin(), err.end());
}

double nu_mass(double t, int panels) {
  auto f = [t](double p) { return biane_density(t, p); };
  if (t <= 4.0) return 2.0 * gauss_graded(f, 0.0, phi_max(t), panels);
  return 2.0 * gauss_uniform(f, 0.0, kPi, std::max(4, panels / 4));
}

ShadowMap make_shadow_map(double t, int n, Exec exec) {
  ShadowMap s;
  s.t = t;
  s.phi_max = phi_max(t);
  s.boundary = sample_boundary(t, n, exec);
  s.samples.reserve(s.boundary.samples.size());
  for (const auto& b : s.boundary.samples) s.samples.push_back({b.theta, phi_of_theta(t, b.theta)});
  return s;
}

void write_shadow_csv(std::ostream& os, const ShadowMap& s) {
  csv::write_header(os, {"theta", "phi"});
  for (const auto& x : s.samples) csv::write_row(os, {x.theta, x.phi});
}

void write_nu_csv(std::ostream& os, double t, int n) {
  const double pm = phi_max(t);
  csv::write_header(os, {"phi", "nu_density"});
  for (int k = 0; k < n; ++k) {
    const double phi = pm * (-1.0 + (2.0 * k + 1.0) / n);
    csv::write_row(os, {phi, biane_density(t, phi)});
  }
}

}  // namespace bm
