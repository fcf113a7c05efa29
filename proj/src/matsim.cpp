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

#include "brownmeasure/matsim.hpp"

#include <algorithm>
#include <json.hpp>
#include <ostream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/density.hpp"
#include "brownmeasure/prng.hpp"
#include "brownmeasure/quadrature.hpp"
#include "brownmeasure/region.hpp"
#include "brownmeasure/shadow.hpp"

namespace bm {

const char* to_string(Group g) { return g == Group::GL ? "GL" : "U"; }

void validate(const SimConfig& cfg) {
  if (cfg.N < 2) throw ConfigError("N must be at least 2");
  if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) throw ConfigError("t must be finite and non-negative");
  if (cfg.samples < 1) throw ConfigError("samples must be at least 1");
  if (cfg.steps < 0) throw ConfigError("steps must be non-negative");
  const int min_steps = static_cast<int>(std::ceil(100.0 * cfg.t));
  if (cfg.steps < min_steps) throw ConfigError("steps must be at least ceil(100 t) = " + std::to_string(min_steps));
  if (cfg.project_every < 0) throw ConfigError("project_every must be non-negative");
}

namespace {

constexpr std::uint64_t kUStream = 0x5555555555555555ULL;
constexpr std::uint64_t kBootstrapStream = 0xb007b007b007b007ULL;

}  // namespace

CMatrix simulate_gl(const SimConfig& cfg, std::uint64_t sample, double* log_scale) {
  validate(cfg);
  const int N = cfg.N;
  CMatrix B = CMatrix::Identity(N, N);
  double lscale = 0.0;
  if (cfg.steps == 0 || cfg.t == 0.0) {
    if (log_scale) *log_scale = 0.0;
    return B;
  }
  auto eng = stream_engine(cfg.seed, sample);
  const double dt = cfg.t / cfg.steps;
  std::normal_distribution<double> gauss(0.0, std::sqrt(dt / (2.0 * N)));
  CMatrix dZ(N, N), tmp(N, N);
  for (int k = 0; k < cfg.steps; ++k) {
    for (Eigen::Index j = 0; j < N; ++j)
      for (Eigen::Index i = 0; i < N; ++i) {
        const double re = gauss(eng);
        const double im = gauss(eng);
        dZ(i, j) = cplx(re, im);
      }
    tmp.noalias() = B * dZ;
    B += tmp;
    if ((k & 15) == 15) {
      const double mx = B.cwiseAbs().maxCoeff();
      if (mx > 1e100) {
        const int e = std::ilogb(mx);
        B *= std::ldexp(1.0, -e);
        lscale += e * std::log(2.0);
      }
    }
  }
  if (log_scale) *log_scale = lscale;
  return B;
}

void unitarize(CMatrix& u) {
  const Eigen::Index n = u.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  CMatrix g(n, n), nu(n, n);
  for (int it = 0; it < 20; ++it) {
    g.noalias() = u.adjoint() * u;
    const double defect = (g - I).norm();
    if (defect < 1e-14 * std::sqrt(static_cast<double>(n))) return;
    if (defect > 0.9) {
      // Far from unitary: fall back to an SVD polar factor.
      Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = svd.matrixU() * svd.matrixV().adjoint();
      continue;
    }
    nu.noalias() = u * (1.5 * I - 0.5 * g);
    u.swap(nu);
  }
}

CMatrix simulate_u(const SimConfig& cfg, std::uint64_t sample) {
  validate(cfg);
  const int N = cfg.N;
  CMatrix U = CMatrix::Identity(N, N);
  if (cfg.steps == 0 || cfg.t == 0.0) return U;
  auto eng = stream_engine(cfg.seed ^ kUStream, sample);
  const double dt = cfg.t / cfg.steps;
  std::normal_distribution<double> off(0.0, std::sqrt(dt / (2.0 * N)));
  std::normal_distribution<double> diag(0.0, std::sqrt(dt / N));
  CMatrix M(N, N), tmp(N, N);
  const cplx I(0.0, 1.0);
  for (int k = 0; k < cfg.steps; ++k) {
    // M = i dX - dt/2, dX from the GUE
    for (Eigen::Index j = 0; j < N; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const cplx x(off(eng), off(eng));
        M(i, j) = I * x;
        M(j, i) = I * std::conj(x);
      }
      M(j, j) = cplx(-0.5 * dt, diag(eng));
    }
    tmp.noalias() = U * M;
    U += tmp;
    if (cfg.project_every > 0 && (k + 1) % cfg.project_every == 0) unitarize(U);
  }
  if (cfg.project_every > 0) unitarize(U);
  return U;
}

EigenCloud simulate_cloud(const SimConfig& cfg, Exec exec) {
  validate(cfg);
  EigenCloud cloud;
  cloud.provenance = cfg;
  std::vector<std::vector<cplx>> per(static_cast<size_t>(cfg.samples));
  const long S = cfg.samples;
  auto body = [&](long s) {
    std::vector<cplx> ev;
    if (cfg.group == Group::GL) {
      double ls = 0.0;
      CMatrix B = simulate_gl(cfg, static_cast<std::uint64_t>(s), &ls);
      ev = eigenvalues(B);
      if (ls != 0.0)
        for (auto& z : ev) z *= std::exp(ls);
    } else {
      ev = eigenvalues(simulate_u(cfg, static_cast<std::uint64_t>(s)));
    }
    per[s] = std::move(ev);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long s = 0; s < S; ++s) body(s);
  } else {
    for (long s = 0; s < S; ++s) body(s);
  }
  for (auto& v : per) cloud.eigenvalues.insert(cloud.eigenvalues.end(), v.begin(), v.end());
  for (const auto& z : cloud.eigenvalues)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("simulate_cloud: NaN eigenvalue");
  return cloud;
}

namespace {

CdfTable arg_cdf(double t) {
  return CdfTable([t](double th) { return angular_marginal(t, th); }, theta_max(t), t <= 4.0, 4096);
}

CdfTable nu_cdf(double t) {
  return CdfTable([t](double p) { return biane_density(t, p); }, phi_max(t), t <= 4.0, 4096);
}

double chi2_uniform(const std::vector<double>& u, int bins) {
  std::vector<double> cnt(static_cast<size_t>(bins), 0.0);
  for (double v : u) {
    int b = static_cast<int>((v + 1.0) * 0.5 * bins);
    cnt[static_cast<size_t>(std::clamp(b, 0, bins - 1))] += 1.0;
  }
  const double e = static_cast<double>(u.size()) / bins;
  double chi = 0.0;
  for (double c : cnt) chi += (c - e) * (c - e) / e;
  return chi;
}

}  // namespace

BrownReport compare_to_brown(const EigenCloud& cloud, double t, double tol_dilate) {
  if (cloud.eigenvalues.empty()) throw DomainError("compare_to_brown: empty cloud");
  if (cloud.provenance.t != t) throw DomainError("compare_to_brown: cloud was simulated at a different t");
  BrownReport r;
  r.t = t;
  r.count = cloud.eigenvalues.size();
  r.tol_dilate = tol_dilate;

  const double tm = theta_max(t);
  std::vector<double> args, phis, flat;
  args.reserve(r.count);
  phis.reserve(r.count);
  std::size_t inside = 0;
  for (const cplx z : cloud.eigenvalues) {
    const double th = std::arg(z);
    args.push_back(th);
    const double T = z == cplx(0.0, 0.0) ? std::numeric_limits<double>::infinity() : gobbling_time(z);
    if (T <= t * (1.0 + tol_dilate)) ++inside;
    if (T > t + kBandTol) ++r.n_outside;
    bool proj = false;
    phis.push_back(shadow_angle(t, th, &proj));
    if (proj) ++r.n_projected;
    if (std::isfinite(T) && (t > 4.0 || std::abs(th) < tm)) {
      const double lr = std::log(outer_radius(t, th));
      const double u = std::log(std::abs(z)) / lr;
      if (std::abs(u) <= 1.0) flat.push_back(u);
    }
  }
  r.inside_fraction = static_cast<double>(inside) / r.count;

  const CdfTable fa = arg_cdf(t);
  r.ks_arg = ks_statistic(args, [&](double x) { return fa(x); });
  const CdfTable fn = nu_cdf(t);
  r.ks_shadow = ks_statistic(phis, [&](double x) { return fn(x); });

  r.flatness_bins = 10;
  r.flatness_count = flat.size();
  if (flat.size() >= static_cast<std::size_t>(5 * r.flatness_bins)) {
    r.flatness_chi2 = chi2_uniform(flat, r.flatness_bins);
    auto eng = stream_engine(cloud.provenance.seed, kBootstrapStream);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const int B = 2000;
    std::vector<double> boot(B);
    std::vector<double> draw(flat.size());
    for (int b = 0; b < B; ++b) {
      for (auto& v : draw) v = U(eng);
      boot[b] = chi2_uniform(draw, r.flatness_bins);
    }
    std::sort(boot.begin(), boot.end());
    r.flatness_band99 = boot[static_cast<size_t>(0.99 * (B - 1))];
  } else {
    r.flatness_chi2 = std::numeric_limits<double>::quiet_NaN();
    r.flatness_band99 = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double unitary_ks(const EigenCloud& cloud, double t) {
  if (cloud.eigenvalues.empty()) throw DomainError("unitary_ks: empty cloud");
  std::vector<double> ang;
  ang.reserve(cloud.eigenvalues.size());
  for (const cplx z : cloud.eigenvalues) ang.push_back(std::arg(z));
  const CdfTable fn = nu_cdf(t);
  return ks_statistic(ang, [&](double x) { return fn(x); });
}

void write_eigen_csv(std::ostream& os, const EigenCloud& c) {
  csv::write_header(os, {"re", "im"});
  for (const cplx z : c.eigenvalues) csv::write_row(os, {z.real(), z.imag()});
}

static nlohmann::json config_json(const SimConfig& cfg) {
  nlohmann::json j;
  j["N"] = cfg.N;
  j["t"] = cfg.t;
  j["steps"] = cfg.steps;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["group"] = to_string(cfg.group);
  j["project_every"] = cfg.project_every;
  return j;
}

void write_provenance_json(std::ostream& os, const SimConfig& cfg) { os << config_json(cfg).dump(2) << '\n'; }

void write_report_json(std::ostream& os, const BrownReport& r, const SimConfig& cfg) {
  nlohmann::json j;
  j["inside_fraction"] = r.inside_fraction;
  j["ks_arg"] = r.ks_arg;
  j["ks_shadow"] = r.ks_shadow;
  j["n_outside"] = r.n_outside;
  j["n_projected"] = r.n_projected;
  j["tol_dilate"] = r.tol_dilate;
  j["flatness_chi2"] = r.flatness_chi2;
  j["flatness_band99"] = r.flatness_band99;
  j["flatness_bins"] = r.flatness_bins;
  j["flatness_count"] = r.flatness_count;
  j["config"] = config_json(cfg);
  os << j.dump(2) << '\n';
}

}  // namespace bm
