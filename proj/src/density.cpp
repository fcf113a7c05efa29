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

#include "brownmeasure/density.hpp"

#include <algorithm>
#include <json.hpp>
#include <ostream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/quadrature.hpp"
#include "brownmeasure/shadow.hpp"

namespace bm {

double h_of_r(double r) {
  if (!(r > 0.0)) throw DomainError("h_of_r: r must be positive");
  return r * log_ratio(r);
}

double h_prime(double r) {
  if (!(r > 0.0)) throw DomainError("h_prime: r must be positive");
  const double e = r - 1.0;
  if (std::abs(e) < 1e-3) {
    return e * (-1.0 / 3 + e * (1.0 / 2 + e * (-8.0 / 15 + e * (1.0 / 2 + e * (-31.0 / 70)))));
  }
  const double u = e * (r + 1.0);
  return 2.0 / u - (r * r + 1.0) / (r * u) * h_of_r(r);
}

double c_of_r(double r) {
  if (!(r > 0.0)) throw DomainError("c_of_r: r must be positive");
  const double e = r - 1.0;
  if (std::abs(e) < 1e-3) {
    return 1.0 / 6 + e * (-1.0 / 6 + e * (2.0 / 15 + e * (-1.0 / 10 + e * (31.0 / 420 + e * (-23.0 / 420)))));
  }
  return (1.0 - h_of_r(r)) / (e * e);
}

OmegaParts omega_parts(double r) {
  OmegaParts p{};
  p.h = h_of_r(r);
  p.c = c_of_r(r);
  p.alpha = r * r + 1.0 - 2.0 * r * p.h;
  p.beta = (r * r + 1.0) * p.h - 2.0 * r;
  p.alpha_tilde = 1.0 + 2.0 * r * p.c;
  p.beta_tilde = 1.0 - (r * r + 1.0) * p.c;
  return p;
}

double omega(double r, double theta) {
  if (!(r > 0.0)) throw DomainError("omega: r must be positive, got " + std::to_string(r));
  const OmegaParts p = omega_parts(r);
  const double c = std::cos(theta);
  return 1.0 + p.h * (p.alpha_tilde * c + p.beta_tilde) / (p.beta_tilde * c + p.alpha_tilde);
}

const char* to_string(Route r) {
  switch (r) {
    case Route::omega: return "omega";
    case Route::theta_derivative: return "theta_derivative";
    case Route::phi_jacobian: return "phi_jacobian";
  }
  return "?";
}

Route route_from_string(const std::string& s) {
  if (s == "omega") return Route::omega;
  if (s == "theta_derivative") return Route::theta_derivative;
  if (s == "phi_jacobian") return Route::phi_jacobian;
  throw ConfigError("unknown route '" + s + "' (expected omega, theta_derivative or phi_jacobian)");
}

namespace {

// d s_t / d theta along the boundary: 2 r sin(theta)/|r e^{i theta} - 1|^2.
double dsdtheta(double t, double theta) {
  const double r = outer_radius(t, theta);
  const double s = std::sin(0.5 * theta);
  const double den = (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
  return 2.0 * r * std::sin(theta) / den;
}

double fd_step(double t, double theta) {
  const double tm = theta_max(t);
  double d = 1e-5 * tm;
  if (t <= 4.0) d = std::min(d, 0.5 * (tm - std::abs(normalize_angle(theta))));
  return d;
}

}  // namespace

double w_of_theta(double t, double theta, Route route) {
  switch (route) {
    case Route::omega: {
      const double r = outer_radius(t, theta);
      return omega(r, theta) / (2.0 * kPi * t);
    }
    case Route::theta_derivative: {
      (void)outer_radius(t, theta);  // wedge check
      const double d = fd_step(t, theta);
      const double dm = (dsdtheta(t, theta + d) - dsdtheta(t, theta - d)) / (2.0 * d);
      return (2.0 / t + dm) / (4.0 * kPi);
    }
    case Route::phi_jacobian: {
      (void)outer_radius(t, theta);
      const double d = fd_step(t, theta);
      const double dphi = (phi_of_theta(t, theta + d) - phi_of_theta(t, theta - d)) / (2.0 * d);
      return dphi / (2.0 * kPi * t);
    }
  }
  throw DomainError("w_of_theta: bad route");
}

double w_closed(double t, double theta) {
  const double r = outer_radius_closed(t, theta);
  return omega(r, theta) / (2.0 * kPi * t);
}

DensityValue brown_density(double t, PolarPoint p) {
  const Membership m = contains(t, p);
  if (m == Membership::outside) return {0.0, m};
  double theta = p.theta;
  if (m == Membership::boundary && t <= 4.0) {
    const double tm = theta_max(t);
    theta = std::clamp(theta, -tm, tm);
  }
  return {w_closed(t, theta) / (p.r * p.r), m};
}

double angular_marginal(double t, double theta) {
  const double r = outer_radius_closed(t, theta);
  if (r == 1.0) return 0.0;
  return 2.0 * std::log(r) * omega(r, theta) / (2.0 * kPi * t);
}

double total_mass(double t, int panels) {
  if (panels < 1) throw DomainError("total_mass: panels must be positive");
  auto a = [t](double th) { return angular_marginal(t, th); };
  double half;
  int nodes;
  if (t <= 4.0) {
    half = gauss_graded(a, 0.0, theta_max(t), panels);
    nodes = (panels + 1) * kGaussNodes;
  } else {
    const int p = std::max(4, panels / 4);
    half = gauss_uniform(a, 0.0, kPi, p);
    nodes = p * kGaussNodes;
  }
  const double m = 2.0 * half;
  if (!std::isfinite(m))
    throw DomainError("total_mass: quadrature produced a non-finite value with " + std::to_string(nodes) + " nodes");
  return m;
}

DensityGrid density_grid(double t, int n, Route route, Exec exec) {
  DensityGrid g;
  g.t = t;
  g.n = n;
  g.route = route;
  const auto th = boundary_thetas(t, n);
  g.rows.resize(th.size());
  const long m = static_cast<long>(th.size());
  auto body = [&](long k) {
    const double r = outer_radius(t, th[k]);
    const double w = w_of_theta(t, th[k], route);
    g.rows[k] = {th[k], r, w, 2.0 * std::log(r) * w};
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < m; ++k) body(k);
  } else {
    for (long k = 0; k < m; ++k) body(k);
  }
  return g;
}

void write_density_csv(std::ostream& os, const DensityGrid& g) {
  csv::write_header(os, {"theta", "r_t", "w_t", "a_t"});
  for (const auto& r : g.rows) csv::write_row(os, {r.theta, r.r_t, r.w_t, r.a_t});
}

void write_density_json(std::ostream& os, const DensityGrid& g) {
  nlohmann::json j;
  j["t"] = g.t;
  j["n"] = g.n;
  j["route"] = to_string(g.route);
  j["tol"] = g.tol;
  os << j.dump(2) << '\n';
}

}  // namespace bm
