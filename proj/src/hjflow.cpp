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

#include "brownmeasure/hjflow.hpp"

#include <algorithm>
#include <array>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/region.hpp"

namespace bm {

double hamiltonian(const HJState& s) {
  const double K = 1.0 + (s.a * s.a + s.b * s.b) * s.px - s.x * s.px - s.a * s.pa - s.b * s.pb;
  return -s.x * s.px * K;
}

HJState hamiltonian_flow(const HJState& s) {
  const double m2 = s.a * s.a + s.b * s.b;
  const double xp = s.x * s.px;
  const double K = 1.0 + m2 * s.px - xp - s.a * s.pa - s.b * s.pb;
  HJState d;
  d.a = s.a * xp;
  d.b = s.b * xp;
  d.x = -s.x * K - xp * (m2 - s.x);
  d.pa = 2.0 * s.a * xp * s.px - xp * s.pa;
  d.pb = 2.0 * s.b * xp * s.px - xp * s.pb;
  d.px = s.px * K - xp * s.px;
  d.t = 1.0;
  d.L = xp;
  return d;
}

double psi_of(const HJState& s) { return s.x * s.px + 0.5 * (s.a * s.pa + s.b * s.pb); }

double angular_momentum(const HJState& s) { return s.a * s.pb - s.b * s.pa; }

namespace {

void check_standing(cplx lambda0, double x0) {
  if (lambda0 == cplx(0.0, 0.0))
    throw DomainError("lambda0 = 0 is excluded; the characteristic through the origin is not supported");
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw DomainError("x0 must be finite and non-negative");
  if (x0 == 0.0 && lambda0 == cplx(1.0, 0.0)) throw DomainError("(lambda0, x0) = (1, 0) is excluded");
}

// (1/gamma) log((delta+gamma)/(delta-gamma)), gamma = sqrt(delta^2-4).
double lifetime_factor(double delta_minus_2) {
  const double delta = 2.0 + delta_minus_2;
  const double gamma = std::sqrt(delta_minus_2 * (delta + 2.0));
  const double z = gamma / delta;
  if (z < 1e-4) {
    const double z2 = z * z;
    return 2.0 / delta * (1.0 + z2 * (1.0 / 3 + z2 * (1.0 / 5 + z2 / 7)));
  }
  // (delta+gamma)(delta-gamma) = 4
  return 2.0 / gamma * std::log1p(0.5 * (delta_minus_2 + gamma));
}

}  // namespace

double t_star(cplx lambda0, double x0) {
  check_standing(lambda0, x0);
  const double r = std::abs(lambda0);
  const double q = (std::norm(lambda0 - 1.0) + x0) / r;  // delta - 2 cos(theta0)
  const double dm2 = ((r - 1.0) * (r - 1.0) + x0) / r;
  return q * lifetime_factor(dm2);
}

double g_of_delta(double theta0, double delta) {
  if (!(delta >= 2.0)) throw DomainError("g_of_delta: delta must be >= 2");
  const double s = std::sin(0.5 * theta0);
  const double dm2 = delta - 2.0;
  return (dm2 + 4.0 * s * s) * lifetime_factor(dm2);
}

HJConstants make_constants(cplx lambda0, double x0) {
  check_standing(lambda0, x0);
  HJConstants c;
  c.lambda0 = lambda0;
  c.x0 = x0;
  c.r0 = std::abs(lambda0);
  c.theta0 = std::arg(lambda0);
  const double d1 = std::norm(lambda0 - 1.0) + x0;
  c.p0 = 1.0 / d1;
  c.delta_minus_2 = ((c.r0 - 1.0) * (c.r0 - 1.0) + x0) / c.r0;
  c.delta = 2.0 + c.delta_minus_2;
  c.C = c.p0 * ((c.r0 - 1.0) * (c.r0 + 1.0) + x0);
  c.Psi = 0.5 * (c.C + 1.0);
  c.H0 = -x0 * c.p0 * c.p0;
  c.y0 = c.p0 + 0.5 * c.C;
  c.a_sq = 0.25 * c.C * c.C + x0 * c.p0 * c.p0;
  c.t_star = d1 / c.r0 * lifetime_factor(c.delta_minus_2);
  return c;
}

HJInit init_state(cplx lambda0, double x0) {
  HJInit in;
  in.constants = make_constants(lambda0, x0);
  const double p0 = in.constants.p0;
  HJState& s = in.state;
  s.a = lambda0.real();
  s.b = lambda0.imag();
  s.x = x0;
  s.pa = 2.0 * (s.a - 1.0) * p0;
  s.pb = 2.0 * s.b * p0;
  s.px = p0;
  s.t = 0.0;
  s.L = 0.0;
  return in;
}

EvenCoshSinh even_cosh_sinh(double a_sq, double t) {
  const double z = a_sq * t * t;
  if (std::abs(z) < 1e-8) {
    double ch = 0.0, sh = 0.0, term_c = 1.0, term_s = 1.0;
    for (int k = 0; k < 8; ++k) {
      ch += term_c;
      sh += term_s;
      term_c *= z / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
      term_s *= z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return {ch, t * sh};
  }
  if (a_sq > 0.0) {
    const double a = std::sqrt(a_sq);
    return {std::cosh(a * t), std::sinh(a * t) / a};
  }
  const double w = std::sqrt(-a_sq);
  return {std::cos(w * t), std::sin(w * t) / w};
}

double even_tanh_over_a(double a_sq, double t) {
  const double z = a_sq * t * t;
  if (std::abs(z) < 1e-8) {
    const auto e = even_cosh_sinh(a_sq, t);
    return e.sh_over_a / e.ch;
  }
  if (a_sq > 0.0) {
    const double a = std::sqrt(a_sq);
    return std::tanh(a * t) / a;
  }
  const double w = std::sqrt(-a_sq);
  return std::tan(w * t) / w;
}

double px_closed_form(const HJConstants& c, double t) {
  if (!(t >= 0.0)) throw DomainError("px_closed_form: t must be non-negative");
  if (t >= c.t_star) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "px_closed_form: evaluation at or past blowup, t=" << t << " t_star=" << c.t_star;
    throw DomainError(ss.str());
  }
  const double ts = even_tanh_over_a(c.a_sq, t);
  const double k1 = c.p0 * c.r0 * c.r0 - c.y0;
  const double den = 1.0 - c.y0 * ts;
  if (!(den > 0.0)) throw DomainError("px_closed_form: denominator vanished before t_star");
  return c.p0 * std::exp(-c.C * t) * (1.0 + k1 * ts) / den;
}

double x_closed_form(const HJConstants& c, double t) {
  if (c.x0 == 0.0) return 0.0;
  const double px = px_closed_form(c, t);
  return c.x0 * c.p0 * c.p0 * std::exp(-c.C * t) / (px * px);
}

double lambda_sq_closed_form(const HJConstants& c, double t) {
  const double px = px_closed_form(c, t);
  const double e = std::exp(c.C * t);
  return e + c.C / px - c.x0 * c.p0 * c.p0 / (e * px * px);
}

double x0_for_lifetime(double t, cplx lambda0) {
  if (lambda0 == cplx(0.0, 0.0)) throw OutsideDomainError("x0_for_lifetime: lambda0 = 0");
  const double T = gobbling_time(lambda0);
  if (T > t + kBandTol) throw OutsideDomainError("x0_for_lifetime: lambda0 outside the closure of Sigma_t");
  double th = std::arg(lambda0);
  if (t <= 4.0) th = std::clamp(th, -theta_max(t), theta_max(t));
  const double R = outer_radius_closed(t, th);
  const double r = std::abs(lambda0);
  // r (R + 1/R) - r^2 - 1, factored
  return std::max(0.0, (R - r) * (r * R - 1.0) / R);
}

cplx lambda_t_map(double t, cplx lambda0) {
  const double x0 = x0_for_lifetime(t, lambda0);
  const double r = std::abs(lambda0);
  const double e = 0.5 * t * ((r - 1.0) * (r + 1.0) + x0) / (std::norm(lambda0 - 1.0) + x0);
  return lambda0 / r * std::exp(e);
}

cplx inverse_lambda_t(double t, cplx lambda) {
  if (lambda == cplx(0.0, 0.0) || contains(t, lambda) == Membership::outside)
    throw OutsideDomainError("inverse_lambda_t: lambda outside the closure of Sigma_t");
  double th = std::arg(lambda);
  if (t <= 4.0) th = std::clamp(th, -theta_max(t), theta_max(t));
  const double R = outer_radius_closed(t, th);
  if (R == 1.0) return lambda;
  const double lr = std::log(R);
  const double target = std::clamp(std::log(std::abs(lambda)), -lr, lr);
  const cplx u = std::polar(1.0, th);
  auto g = [&](double rho0) {
    const double r0 = std::exp(rho0);
    const double x0 = std::max(0.0, (R - r0) * (r0 * R - 1.0) / R);
    return 0.5 * t * ((r0 - 1.0) * (r0 + 1.0) + x0) / (std::norm(r0 * u - 1.0) + x0);
  };
  double lo = -lr, hi = lr;
  int it = 0;
  while (hi - lo > 4e-16 * std::max(1.0, lr)) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < target ? lo : hi) = mid;
    if (++it > 300) throw NonConvergenceError("inverse_lambda_t: bisection did not converge", lo, hi, it);
  }
  return std::exp(0.5 * (lo + hi)) * std::polar(1.0, std::arg(lambda));
}

Trajectory integrate(const HJState& s0, const HJConstants& c, double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("integrate: dt must be positive");
  if (!(t_end < c.t_star)) throw DomainError("integrate: t_end must lie before t_star");
  Trajectory tr;
  tr.constants = c;
  tr.states.push_back(s0);
  HJState s = s0;
  auto axpy = [](const HJState& y, double h, const HJState& k) {
    HJState r;
    r.a = y.a + h * k.a;
    r.b = y.b + h * k.b;
    r.x = y.x + h * k.x;
    r.pa = y.pa + h * k.pa;
    r.pb = y.pb + h * k.pb;
    r.px = y.px + h * k.px;
    r.t = y.t + h * k.t;
    r.L = y.L + h * k.L;
    return r;
  };
  const double min_step = 1e-14 * c.t_star;
  while (s.t < t_end) {
    double h = std::min(dt, t_end - s.t);
    while (h > (c.t_star - s.t) / 64.0) {
      h *= 0.5;
      if (h < min_step) throw DomainError("integrate: step size underflow near t_star");
    }
    const HJState k1 = hamiltonian_flow(s);
    const HJState k2 = hamiltonian_flow(axpy(s, 0.5 * h, k1));
    const HJState k3 = hamiltonian_flow(axpy(s, 0.5 * h, k2));
    const HJState k4 = hamiltonian_flow(axpy(s, h, k3));
    const double t_next = (t_end - s.t <= h) ? t_end : s.t + h;
    s.a += h / 6.0 * (k1.a + 2 * k2.a + 2 * k3.a + k4.a);
    s.b += h / 6.0 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b);
    s.x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    s.pa += h / 6.0 * (k1.pa + 2 * k2.pa + 2 * k3.pa + k4.pa);
    s.pb += h / 6.0 * (k1.pb + 2 * k2.pb + 2 * k3.pb + k4.pb);
    s.px += h / 6.0 * (k1.px + 2 * k2.px + 2 * k3.px + k4.px);
    s.L += h / 6.0 * (k1.L + 2 * k2.L + 2 * k3.L + k4.L);
    s.t = t_next;
    tr.states.push_back(s);
  }
  return tr;
}

Trajectory integrate(const HJState& s0, double t_end, double dt) {
  return integrate(s0, make_constants(cplx(s0.a, s0.b), s0.x), t_end, dt);
}

double hj_value_S(double t, cplx lambda0, double x0) {
  const HJConstants c = make_constants(lambda0, x0);
  const double d1 = std::norm(lambda0 - 1.0) + x0;
  if (t == 0.0) return std::log(d1);
  if (t > c.t_star * (1.0 + 1e-12)) throw DomainError("hj_value_S: t beyond t_star");
  double log_lam;
  if (std::abs(t - c.t_star) <= 1e-12 * c.t_star)
    log_lam = 0.5 * c.C * t;
  else
    log_lam = 0.5 * std::log(lambda_sq_closed_form(c, t));
  return std::log(d1) - x0 * c.p0 * c.p0 * t + log_lam - std::log(c.r0);
}

double hj_value_S(const HJConstants& c, const HJState& s) {
  return -std::log(c.p0) - c.x0 * c.p0 * c.p0 * s.t + s.L;
}

double s_t(double t, cplx lambda) {
  if (lambda == cplx(0.0, 0.0)) throw DomainError("s_t: lambda = 0");
  const Membership m = contains(t, lambda);
  if (m != Membership::inside) return std::log(std::norm(lambda - 1.0));
  const cplx l0 = inverse_lambda_t(t, lambda);
  const double x0 = x0_for_lifetime(t, l0);
  const HJConstants c = make_constants(l0, x0);
  const double d1 = std::norm(l0 - 1.0) + x0;
  return std::log(d1) - x0 * t / (d1 * d1) + 0.5 * c.C * t - std::log(c.r0);
}

namespace {

struct ChartEval {
  bool ok;
  std::array<double, 2> f;
};

ChartEval chart_residual(double t, double theta, double log_r_target, double log_x_target, const std::array<double, 2>& u) {
  const double r0 = std::exp(u[0]);
  const double x0 = std::exp(u[1]);
  const cplx l0 = std::polar(r0, theta);
  if (!(x0 > 0.0) || !std::isfinite(x0)) return {false, {0, 0}};
  const HJConstants c = make_constants(l0, x0);
  if (!(t < c.t_star)) return {false, {0, 0}};
  const double lam2 = lambda_sq_closed_form(c, t);
  const double xx = x_closed_form(c, t);
  if (!(lam2 > 0.0) || !(xx > 0.0)) return {false, {0, 0}};
  return {true, {0.5 * std::log(lam2) - log_r_target, std::log(xx) - log_x_target}};
}

double inf_norm(const std::array<double, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

}  // namespace

ChartPoint chart_inverse(double t, cplx lambda, double x, const ChartPoint* guess) {
  if (!(x > 0.0)) throw DomainError("chart_inverse: x must be positive");
  if (lambda == cplx(0.0, 0.0)) throw DomainError("chart_inverse: lambda = 0");
  const double theta = std::arg(lambda);
  const double lrt = std::log(std::abs(lambda));
  const double lxt = std::log(x);
  std::array<double, 2> u;
  if (guess) {
    u = {std::log(std::abs(guess->lambda0)), std::log(guess->x0)};
  } else if (contains(t, lambda) == Membership::outside) {
    u = {lrt, lxt};
  } else {
    const cplx l0 = inverse_lambda_t(t, lambda);
    u = {std::log(std::abs(l0)), std::log(x0_for_lifetime(t, l0) + x)};
  }
  ChartEval cur = chart_residual(t, theta, lrt, lxt, u);
  if (!cur.ok) throw DomainError("chart_inverse: initial guess outside the chart");
  for (int it = 0; it < 80; ++it) {
    const double fn = inf_norm(cur.f);
    if (fn <= 2e-15) break;
    std::array<std::array<double, 2>, 2> J{};
    for (int k = 0; k < 2; ++k) {
      const double e = 1e-7;
      auto up = u, dn = u;
      up[k] += e;
      dn[k] -= e;
      const ChartEval fu = chart_residual(t, theta, lrt, lxt, up);
      const ChartEval fd = chart_residual(t, theta, lrt, lxt, dn);
      for (int i = 0; i < 2; ++i) {
        if (fu.ok && fd.ok) J[i][k] = (fu.f[i] - fd.f[i]) / (2 * e);
        else if (fu.ok) J[i][k] = (fu.f[i] - cur.f[i]) / e;
        else if (fd.ok) J[i][k] = (cur.f[i] - fd.f[i]) / e;
        else throw DomainError("chart_inverse: Jacobian stencil left the chart");
      }
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (det == 0.0 || !std::isfinite(det)) throw NonConvergenceError("chart_inverse: singular Jacobian", u[0], u[1], it);
    const std::array<double, 2> step = {-(J[1][1] * cur.f[0] - J[0][1] * cur.f[1]) / det,
                                        -(-J[1][0] * cur.f[0] + J[0][0] * cur.f[1]) / det};
    double lam = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 50; ++bt, lam *= 0.5) {
      const std::array<double, 2> un = {u[0] + lam * step[0], u[1] + lam * step[1]};
      const ChartEval ne = chart_residual(t, theta, lrt, lxt, un);
      if (ne.ok && inf_norm(ne.f) < fn) {
        u = un;
        cur = ne;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (inf_norm(cur.f) > 1e-11)
    throw NonConvergenceError("chart_inverse: residual " + csv::fmt(inf_norm(cur.f)), u[0], u[1], 80);
  return {std::polar(std::exp(u[0]), theta), std::exp(u[1])};
}

double S_value(double t, cplx lambda, double x, const ChartPoint* guess) {
  const ChartPoint cp = chart_inverse(t, lambda, x, guess);
  return hj_value_S(t, cp.lambda0, cp.x0);
}

double pde_residual(double t, cplx lambda, double x, double h) {
  if (!(h > 0.0)) throw DomainError("pde_residual: h must be positive");
  if (!(x - h > 0.0)) throw DomainError("pde_residual: stencil leaves the chart domain (x - h <= 0)");
  if (!(t - h > 0.0)) throw DomainError("pde_residual: stencil leaves the chart domain (t - h <= 0)");
  const ChartPoint c0 = chart_inverse(t, lambda, x);
  auto S = [&](double tt, cplx l, double xx) { return S_value(tt, l, xx, &c0); };
  const double a = lambda.real(), b = lambda.imag();
  const double St = (S(t + h, lambda, x) - S(t - h, lambda, x)) / (2 * h);
  const double Sx = (S(t, lambda, x + h) - S(t, lambda, x - h)) / (2 * h);
  const double Sa = (S(t, lambda + h, x) - S(t, lambda - h, x)) / (2 * h);
  const double Sb = (S(t, lambda + cplx(0, h), x) - S(t, lambda - cplx(0, h), x)) / (2 * h);
  return std::abs(St - x * Sx * (1.0 + (a * a + b * b) * Sx - x * Sx - a * Sa - b * Sb));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  csv::write_header(os, {"t", "a", "b", "x", "p_a", "p_b", "p_x", "H", "L", "Psi", "xpx2"});
  for (const auto& s : tr.states)
    csv::write_row(os, {s.t, s.a, s.b, s.x, s.pa, s.pb, s.px, hamiltonian(s), s.L, psi_of(s), s.x * s.px * s.px});
}

void write_constants_json(std::ostream& os, const HJConstants& c) {
  nlohmann::json j;
  j["lambda0_re"] = c.lambda0.real();
  j["lambda0_im"] = c.lambda0.imag();
  j["x0"] = c.x0;
  j["p0"] = c.p0;
  j["delta"] = c.delta;
  j["C"] = c.C;
  j["Psi"] = c.Psi;
  j["H0"] = c.H0;
  j["y0"] = c.y0;
  j["a_sq"] = c.a_sq;
  j["t_star"] = c.t_star;
  os << j.dump(2) << '\n';
}

}  // namespace bm
