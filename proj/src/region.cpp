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

#include "brownmeasure/region.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/density.hpp"

namespace bm {

double log_ratio(double r) {
  if (!(r > 0.0)) throw DomainError("log_ratio: r must be positive");
  const double e = r - 1.0;
  const double u = e * (r + 1.0);
  if (std::abs(e) < 1e-4) {
    // log(1+u)/u, six terms
    return 1.0 + u * (-1.0 / 2 + u * (1.0 / 3 + u * (-1.0 / 4 + u * (1.0 / 5 + u * (-1.0 / 6)))));
  }
  return 2.0 * std::log(r) / u;
}

double gobbling_time(double r, double theta) {
  if (!(r > 0.0)) throw DomainError("gobbling_time: r must be positive, got " + std::to_string(r));
  const double s = std::sin(0.5 * theta);
  const double e = r - 1.0;
  const double dist2 = e * e + 4.0 * r * s * s;
  return dist2 * log_ratio(r);
}

double gobbling_time(cplx lambda) {
  return gobbling_time(std::abs(lambda), std::arg(lambda));
}

double gobbling_time_dr(double r, double theta) {
  if (!(r > 0.0)) throw DomainError("gobbling_time_dr: r must be positive");
  const double e = r - 1.0;
  const double c = std::cos(theta);
  if (std::abs(e) < 1e-3) {
    const double q = r + 1.0 / r - 2.0 * c;
    return (1.0 - 1.0 / (r * r)) * h_of_r(r) + q * h_prime(r);
  }
  const double u = e * (r + 1.0);
  const double lg = 2.0 * std::log(r);
  return 2.0 * ((-2.0 * r + (1.0 + r * r) * c) / (u * u)) * lg + (r * r + 1.0 - 2.0 * r * c) / u * (2.0 / r);
}

double theta_max(double t) {
  if (!(t > 0.0)) throw DomainError("theta_max: t must be positive, got " + std::to_string(t));
  if (t > 4.0) return kPi;
  return std::acos(1.0 - 0.5 * t);
}

namespace {

std::string bracket_msg(double t, double theta, double lo, double hi) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "outer_radius: no convergence for t=" << t << " theta=" << theta << " bracket=[" << lo << ", " << hi << "]";
  return ss.str();
}

}  // namespace

double outer_radius(double t, double theta, double tol) {
  const double tm = theta_max(t);
  theta = normalize_angle(theta);
  if (t <= 4.0 && std::abs(theta) >= tm) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "outer_radius: |theta|=" << std::abs(theta) << " outside wedge, theta_max=" << tm;
    throw OutOfWedgeError(ss.str());
  }
  auto f = [&](double r) { return gobbling_time(r, theta) - t; };

  double lo = 1.0;
  double hi = 2.0;
  int grow = 0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 1100 || !std::isfinite(hi)) throw NonConvergenceError(bracket_msg(t, theta, lo, hi), lo, hi, grow);
  }

  int iters = 0;
  while (hi - lo > 1e-8 * lo) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
    if (++iters > 400) throw NonConvergenceError(bracket_msg(t, theta, lo, hi), lo, hi, iters);
  }

  double r = 0.5 * (lo + hi);
  for (int k = 0; k < 5; ++k) {
    const double fr = f(r);
    if (fr == 0.0) return r;
    (fr > 0.0 ? hi : lo) = r;
    const double d = gobbling_time_dr(r, theta);
    double next = r - fr / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - r);
    r = next;
    if (step <= 0.25 * tol * r) return r;
  }
  // Newton stalled near the minimum of T at r = 1; finish by bisection.
  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
    if (++iters > 800) throw NonConvergenceError(bracket_msg(t, theta, lo, hi), lo, hi, iters);
  }
  return 0.5 * (lo + hi);
}

double outer_radius_closed(double t, double theta, double tol) {
  theta = normalize_angle(theta);
  if (t <= 4.0) {
    const double tm = theta_max(t);
    if (std::abs(theta) > tm) throw OutOfWedgeError("outer_radius_closed: theta outside closed wedge");
    if (std::abs(theta) == tm) return 1.0;
  }
  return outer_radius(t, theta, tol);
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::boundary: return "boundary";
    case Membership::outside: return "outside";
  }
  return "?";
}

Membership contains(double t, PolarPoint p, double band) {
  const double T = gobbling_time(p);
  if (T < t - band) return Membership::inside;
  if (std::abs(T - t) <= band) return Membership::boundary;
  return Membership::outside;
}

Membership contains(double t, cplx lambda, double band) {
  if (lambda == cplx(0.0, 0.0)) return Membership::outside;
  return contains(t, PolarPoint::from_complex(lambda), band);
}

std::vector<double> boundary_thetas(double t, int n) {
  if (n < 1) throw DomainError("boundary_thetas: n must be positive");
  std::vector<double> th(static_cast<size_t>(n));
  const double tm = theta_max(t);
  for (int k = 0; k < n / 2; ++k) {
    double v;
    if (t <= 4.0)
      v = tm * std::cos((2.0 * k + 1.0) * kPi / (2.0 * n));
    else
      v = kPi - (2.0 * k + 1.0) * kPi / n;
    th[static_cast<size_t>(k)] = -v;
    th[static_cast<size_t>(n - 1 - k)] = v;
  }
  if (n % 2 == 1) th[static_cast<size_t>(n / 2)] = 0.0;
  return th;
}

RegionBoundary sample_boundary(double t, int n, Exec exec) {
  if (n < 16) throw DomainError("sample_boundary: n must be at least 16");
  RegionBoundary b;
  b.t = t;
  b.theta_max = theta_max(t);
  b.closes_on_circle = t <= 4.0;
  const auto th = boundary_thetas(t, n);
  b.samples.resize(th.size());
  const long m = static_cast<long>(th.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < m; ++k) b.samples[k] = {th[k], outer_radius(t, th[k], b.tol)};
  } else {
    for (long k = 0; k < m; ++k) b.samples[k] = {th[k], outer_radius(t, th[k], b.tol)};
  }
  return b;
}

void write_boundary_csv(std::ostream& os, const RegionBoundary& b) {
  csv::write_header(os, {"theta", "r_outer", "r_inner"});
  for (const auto& s : b.samples) csv::write_row(os, {s.theta, s.r_outer, 1.0 / s.r_outer});
}

void write_boundary_svg(std::ostream& os, const RegionBoundary& b) {
  double rmax = 1.0;
  for (const auto& s : b.samples) rmax = std::max(rmax, s.r_outer);
  const double scale = 240.0 / rmax;
  auto pt = [&](double r, double th) {
    return csv::fmt(256.0 + scale * r * std::cos(th)) + "," + csv::fmt(256.0 - scale * r * std::sin(th));
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\">\n";
  for (int inner = 0; inner < 2; ++inner) {
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    if (b.closes_on_circle) os << pt(1.0, -b.theta_max) << ' ';
    for (const auto& s : b.samples) os << pt(inner ? 1.0 / s.r_outer : s.r_outer, s.theta) << ' ';
    if (b.closes_on_circle) os << pt(1.0, b.theta_max);
    else if (!b.samples.empty()) {
      const auto& s = b.samples.front();
      os << pt(inner ? 1.0 / s.r_outer : s.r_outer, s.theta);
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace bm
