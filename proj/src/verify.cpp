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

#include "brownmeasure/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "brownmeasure/density.hpp"
#include "brownmeasure/hjflow.hpp"
#include "brownmeasure/matsim.hpp"
#include "brownmeasure/region.hpp"
#include "brownmeasure/shadow.hpp"

namespace bm {

namespace {

CheckResult start(int id, const char* name) {
  CheckResult r;
  r.id = id;
  r.name = name;
  return r;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// n points strictly inside the wedge for t <= 4, midpoints of (-pi, pi) otherwise.
std::vector<double> open_grid(double t, int n) {
  std::vector<double> th(static_cast<size_t>(n));
  if (t <= 4.0) {
    const double tm = theta_max(t);
    for (int k = 0; k < n; ++k) th[k] = tm * (-1.0 + 2.0 * (k + 1) / (n + 1));
  } else {
    for (int k = 0; k < n; ++k) th[k] = -kPi + (2.0 * k + 1.0) * kPi / n;
  }
  return th;
}

CheckResult check_anchors() {
  CheckResult r = start(1, "exact anchors of omega on the unit circle");
  const double e0 = std::abs(omega(1.0, 0.0) - 2.0);
  const double e1 = std::abs(omega(1.0, kPi));
  const double e2 = std::abs(omega(1.0, 0.5 * kPi) - 1.5);
  r.value = std::max({e0, e1, e2});
  r.threshold = 1e-10;
  r.passed = r.value <= r.threshold;
  r.detail = "errors " + sci(e0) + ", " + sci(e1) + ", " + sci(e2);
  return r;
}

CheckResult check_mass() {
  CheckResult r = start(2, "mass of the Brown measure and of nu_t");
  double wm = 0.0, wn = 0.0;
  for (double t : {0.5, 1.0, 2.0, 4.0, 7.0}) {
    wm = std::max(wm, std::abs(total_mass(t) - 1.0));
    wn = std::max(wn, std::abs(nu_mass(t) - 1.0));
  }
  r.value = std::max(wm / 1e-5, wn / 1e-6);
  r.threshold = 1.0;
  r.passed = wm <= 1e-5 && wn <= 1e-6;
  r.detail = "max |mass-1| " + sci(wm) + " (<= 1e-5), max |nu mass-1| " + sci(wn) + " (<= 1e-6)";
  return r;
}

CheckResult check_routes() {
  CheckResult r = start(3, "three density routes agree");
  r.threshold = 1e-6;
  std::ostringstream d;
  for (double t : {0.5, 2.0, 4.0, 7.0}) {
    double m = 0.0;
    for (double th : open_grid(t, 257)) {
      const double a = w_of_theta(t, th, Route::omega);
      const double b = w_of_theta(t, th, Route::theta_derivative);
      const double c = w_of_theta(t, th, Route::phi_jacobian);
      m = std::max({m, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    }
    r.value = std::max(r.value, m);
    d << "t=" << t << ": " << sci(m) << "  ";
  }
  r.passed = r.value <= r.threshold;
  r.detail = d.str();
  return r;
}

CheckResult check_asymptotics() {
  CheckResult r = start(4, "small and large t asymptotics of w_t");
  r.threshold = 0.05;
  double small = 0.0, large = 0.0;
  for (double th : open_grid(0.1, 401)) small = std::max(small, std::abs(kPi * 0.1 * w_of_theta(0.1, th) - 1.0));
  for (double th : open_grid(20.0, 401)) large = std::max(large, std::abs(2.0 * kPi * 20.0 * w_of_theta(20.0, th) - 1.0));
  r.value = std::max(small, large);
  r.passed = r.value <= r.threshold;
  r.detail = "t=0.1: " + sci(small) + ", t=20: " + sci(large);
  return r;
}

CheckResult check_lifetime() {
  CheckResult r = start(5, "lifetime identities");
  double e0 = 0.0;
  for (double rad : {0.3, 0.5, 0.8, 0.95, 1.0, 1.05, 1.3, 2.0, 3.0, 5.0})
    for (int j = 0; j < 10; ++j) {
      const cplx l0 = std::polar(rad, -kPi + (2.0 * j + 1.0) * kPi / 10.0);
      e0 = std::max(e0, std::abs(t_star(l0, 0.0) - gobbling_time(l0)));
    }
  double e1 = 0.0;
  int cases = 0;
  for (double t : {1.0, 2.0, 4.0, 7.0}) {
    const double tm = t <= 4.0 ? 0.9 * theta_max(t) : 0.9 * kPi;
    for (int j = 0; j < 8; ++j) {
      const double th = tm * (-1.0 + 2.0 * j / 7.0);
      const double lr = std::log(outer_radius(t, th));
      for (double s : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        const cplx l0 = std::polar(std::exp(s * lr), th);
        e1 = std::max(e1, std::abs(t_star(l0, x0_for_lifetime(t, l0)) - t));
        ++cases;
      }
    }
  }
  r.value = std::max(e0 / 1e-10, e1 / 1e-9);
  r.threshold = 1.0;
  r.passed = e0 <= 1e-10 && e1 <= 1e-9;
  r.detail = "|t*(l0,0)-T| " + sci(e0) + " on 100 points (<= 1e-10), round trip " + sci(e1) + " on " +
             std::to_string(cases) + " points (<= 1e-9)";
  return r;
}

CheckResult check_ode() {
  CheckResult r = start(6, "RK4 trajectories against closed forms");
  const cplx lambdas[] = {{0.5, 0.2}, {-0.4, 0.6}, std::polar(1.0, 0.8), {1.8, 0.9}, {-1.5, -2.0}};
  double wpx = 0.0, wq = 0.0;
  for (const cplx l0 : lambdas)
    for (double x0 : {0.1, 0.5, 1.0, 2.0}) {
      const HJInit in = init_state(l0, x0);
      const HJConstants& c = in.constants;
      const Trajectory tr = integrate(in.state, c, 0.95 * c.t_star, c.t_star / 4096.0);
      const HJState& s0 = tr.states.front();
      const double q0[4] = {hamiltonian(s0), angular_momentum(s0), psi_of(s0), s0.x * s0.px * s0.px};
      for (const HJState& s : tr.states) {
        const double pc = px_closed_form(c, s.t);
        wpx = std::max(wpx, std::abs(s.px - pc) / std::abs(pc));
        const double q[4] = {hamiltonian(s), angular_momentum(s), psi_of(s), s.x * s.px * s.px * std::exp(c.C * s.t)};
        for (int k = 0; k < 4; ++k) wq = std::max(wq, std::abs(q[k] - q0[k]) / std::abs(q0[k]));
      }
    }
  r.value = std::max(wpx / 1e-6, wq / 1e-8);
  r.threshold = 1.0;
  r.passed = wpx <= 1e-6 && wq <= 1e-8;
  r.detail = "20 cases: p_x rel err " + sci(wpx) + " (<= 1e-6), invariant drift " + sci(wq) + " (<= 1e-8)";
  return r;
}

CheckResult check_boundary_match() {
  CheckResult r = start(7, "s_t continuity across the boundary");
  const double eps = 1e-4;
  double raw = 0.0, rich = 0.0, dslope = 0.0;
  for (double t : {2.0, 4.0, 7.0}) {
    const RegionBoundary b = sample_boundary(t, 64);
    for (const BoundarySample& bs : b.samples) {
      for (int inner = 0; inner < 2; ++inner) {
        const double R = inner ? 1.0 / bs.r_outer : bs.r_outer;
        const double dir = inner ? 1.0 : -1.0;  // step into the region
        const double out = std::log(std::norm(std::polar(R, bs.theta) - 1.0));
        const double s1 = s_t(t, std::polar(R * (1.0 + dir * eps), bs.theta));
        const double s2 = s_t(t, std::polar(R * (1.0 + dir * 2.0 * eps), bs.theta));
        raw = std::max(raw, std::abs(s1 - out));
        // Richardson estimate of the one-sided limit
        rich = std::max(rich, std::abs(2.0 * s1 - s2 - out));
      }
      const double rho = 0.5 * std::log(bs.r_outer), h = 1e-4;
      const double d = (s_t(t, std::polar(std::exp(rho + h), bs.theta)) -
                        s_t(t, std::polar(std::exp(rho - h), bs.theta))) /
                       (2.0 * h);
      dslope = std::max(dslope, std::abs(d - (2.0 * rho / t + 1.0)));
    }
  }
  r.value = std::max(rich / 1e-4, dslope / 1e-5);
  r.threshold = 1.0;
  r.passed = rich <= 1e-4 && dslope <= 1e-5;
  r.detail = "inside limit vs log|l-1|^2 " + sci(rich) + " (<= 1e-4; single offset " + sci(raw) +
             "), ds/drho " + sci(dslope) + " (<= 1e-5)";
  return r;
}

CheckResult check_pde() {
  CheckResult r = start(8, "PDE residual and its h^2 decay");
  struct P {
    double t;
    cplx l;
    double x;
  };
  const P panel[] = {{1.0, {4.0, 0.0}, 0.1},  {1.0, {0.3, 0.3}, 0.1},  {0.5, {-1.0, 0.5}, 0.2}, {2.0, {-2.0, 1.0}, 0.2},
                     {1.0, {1.5, 1.5}, 0.3},  {1.0, {2.5, 0.0}, 0.1},  {2.0, {1.1, 0.0}, 0.05}, {2.0, {0.7, 0.4}, 0.2},
                     {1.0, {1.2, 0.3}, 0.1},  {7.0, {3.0, 2.0}, 0.3}};
  double worst = 0.0, rmin = 1e300, rmax = 0.0;
  int inside = 0, outside = 0;
  for (const P& p : panel) {
    (contains(p.t, p.l) == Membership::inside ? inside : outside) += 1;
    const double r1 = pde_residual(p.t, p.l, p.x, 1e-3);
    const double r2 = pde_residual(p.t, p.l, p.x, 5e-4);
    worst = std::max(worst, r1);
    rmin = std::min(rmin, r1 / r2);
    rmax = std::max(rmax, r1 / r2);
  }
  r.value = worst;
  r.threshold = 1e-4;
  r.passed = worst <= 1e-4 && rmin >= 3.2 && rmax <= 4.8 && inside > 0 && outside > 0;
  r.detail = std::to_string(inside) + " inside, " + std::to_string(outside) + " outside; max residual " + sci(worst) +
             ", halving ratio in [" + sci(rmin) + ", " + sci(rmax) + "] (want [3.2, 4.8])";
  return r;
}

CheckResult check_pushforward() {
  CheckResult r = start(9, "pushforward of a_t onto nu_t");
  const double e2 = pushforward_check(2.0, 257);
  const double e4 = pushforward_check(4.0, 257);
  const double e7 = pushforward_check(7.0, 257);
  r.value = std::max({e2 / 1e-6, e4 / 1e-5, e7 / 1e-6});
  r.threshold = 1.0;
  r.passed = e2 <= 1e-6 && e4 <= 1e-5 && e7 <= 1e-6;
  r.detail = "t=2: " + sci(e2) + ", t=4: " + sci(e4) + " (<= 1e-5), t=7: " + sci(e7);
  return r;
}

CheckResult check_gl(bool quick) {
  CheckResult r = start(10, "GL(N) eigenvalues against the Brown measure");
  r.threshold = 0.05;
  r.passed = true;
  std::ostringstream d;
  if (quick) d << "quick: ";
  for (double t : {2.0, 4.1}) {
    SimConfig cfg;
    cfg.seed = 7;
    cfg.t = t;
    cfg.N = quick ? 200 : 500;
    cfg.steps = quick ? std::max(200, static_cast<int>(std::ceil(100.0 * t))) : 500;
    cfg.samples = quick ? 2 : 4;
    const BrownReport rep = compare_to_brown(simulate_cloud(cfg), t);
    const bool ok = rep.inside_fraction >= 0.95 && rep.ks_arg <= 0.05 && rep.ks_shadow <= 0.05 &&
                    rep.flatness_chi2 < rep.flatness_band99;
    r.passed = r.passed && ok;
    r.value = std::max({r.value, rep.ks_arg, rep.ks_shadow});
    d << "t=" << t << ": inside " << sci(rep.inside_fraction) << ", ks_arg " << sci(rep.ks_arg) << ", ks_shadow "
      << sci(rep.ks_shadow) << ", chi2 " << sci(rep.flatness_chi2) << " < " << sci(rep.flatness_band99) << "  ";
  }
  r.detail = d.str();
  return r;
}

CheckResult check_unitary(bool quick) {
  CheckResult r = start(11, "U(N) eigen-angles against nu_t");
  SimConfig cfg;
  cfg.group = Group::U;
  cfg.seed = 7;
  cfg.t = 1.0;
  cfg.N = quick ? 128 : 256;
  cfg.steps = 200;
  cfg.samples = quick ? 1 : 2;
  r.value = unitary_ks(simulate_cloud(cfg), 1.0);
  r.threshold = 0.05;
  r.passed = r.value <= r.threshold;
  r.detail = std::string(quick ? "quick: " : "") + "N=" + std::to_string(cfg.N) + ", KS " + sci(r.value);
  return r;
}

}  // namespace

CheckResult run_check(int id, const SuiteOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    switch (id) {
      case 1: r = check_anchors(); break;
      case 2: r = check_mass(); break;
      case 3: r = check_routes(); break;
      case 4: r = check_asymptotics(); break;
      case 5: r = check_lifetime(); break;
      case 6: r = check_ode(); break;
      case 7: r = check_boundary_match(); break;
      case 8: r = check_pde(); break;
      case 9: r = check_pushforward(); break;
      case 10: r = check_gl(opt.quick); break;
      case 11: r = check_unitary(opt.quick); break;
      default: throw ConfigError("no check with id " + std::to_string(id));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_suite(const SuiteOptions& opt, const std::function<void(const CheckResult&)>& on_result) {
  std::vector<int> ids = opt.only;
  if (ids.empty())
    for (int k = 1; k <= kCriterionCount; ++k) ids.push_back(k);
  std::vector<CheckResult> out;
  for (int id : ids) {
    out.push_back(run_check(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

void print_result_line(std::ostream& os, const CheckResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s criterion %2d  %-44s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  os << head << r.detail << '\n';
}

void print_table(std::ostream& os, const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) print_result_line(os, r);
  const auto npass = std::count_if(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
  os << npass << "/" << rs.size() << " passed\n";
}

bool all_passed(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace bm
