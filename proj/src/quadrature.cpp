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

#include "brownmeasure/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>

namespace bm {

double gauss64(const RealFn& f, double a, double b) {
  return boost::math::quadrature::gauss<double, kGaussNodes>::integrate(f, a, b);
}

double gauss_graded(const RealFn& f, double a, double b, int levels) {
  double sum = 0.0;
  double lo = a;
  for (int k = 0; k < levels; ++k) {
    const double hi = lo + 0.5 * (b - lo);
    sum += gauss64(f, lo, hi);
    lo = hi;
  }
  sum += gauss64(f, lo, b);
  return sum;
}

double gauss_uniform(const RealFn& f, double a, double b, int panels) {
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) sum += gauss64(f, a + k * h, a + (k + 1) * h);
  return sum;
}

CdfTable::CdfTable(const RealFn& density, double half_width, bool clustered, int intervals, Exec exec)
    : A_(half_width), clustered_(clustered) {
  if (intervals < 2) throw DomainError("CdfTable: need at least two intervals");
  const int K = intervals;
  const double hs = 2.0 / K;
  auto x_of_s = [&](double s) { return clustered_ ? A_ * std::sin(0.5 * kPi * s) : A_ * s; };
  auto dx_ds = [&](double s) { return clustered_ ? A_ * 0.5 * kPi * std::cos(0.5 * kPi * s) : A_; };
  auto integrand = [&](double s) { return density(x_of_s(s)) * dx_ds(s); };

  std::vector<double> piece(static_cast<size_t>(K));
  dF_.assign(static_cast<size_t>(K + 1), 0.0);
  const long m = K;
  auto body = [&](long k) {
    const double s0 = -1.0 + k * hs;
    piece[k] = boost::math::quadrature::gauss<double, 5>::integrate(integrand, s0, s0 + hs);
    // Endpoint nodes may sit on the edge of the support where density() may throw.
    dF_[k] = (k == 0) ? 0.0 : integrand(s0);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < m; ++k) body(k);
  } else {
    for (long k = 0; k < m; ++k) body(k);
  }
  if (!clustered_) {
    dF_[0] = integrand(-1.0);
    dF_[K] = integrand(1.0);
  }
  F_.assign(static_cast<size_t>(K + 1), 0.0);
  for (int k = 0; k < K; ++k) F_[k + 1] = F_[k] + piece[k];
  mass_ = F_.back();
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw DomainError("CdfTable: non-positive or non-finite mass");
  for (auto& v : F_) v /= mass_;
  for (auto& v : dF_) v /= mass_;
}

double CdfTable::s_of_x(double x) const {
  const double u = std::clamp(x / A_, -1.0, 1.0);
  return clustered_ ? std::asin(u) * 2.0 / kPi : u;
}

double CdfTable::eval_s(double s) const {
  const int K = intervals();
  const double hs = 2.0 / K;
  if (s <= -1.0) return 0.0;
  if (s >= 1.0) return 1.0;
  int k = std::min(K - 1, static_cast<int>((s + 1.0) / hs));
  const double u = (s - (-1.0 + k * hs)) / hs;
  // cubic Hermite
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  return h00 * F_[k] + h10 * hs * dF_[k] + h01 * F_[k + 1] + h11 * hs * dF_[k + 1];
}

double CdfTable::operator()(double x) const {
  if (x <= -A_) return 0.0;
  if (x >= A_) return 1.0;
  return eval_s(s_of_x(x));
}

double CdfTable::quantile(double p) const {
  if (p <= 0.0) return -A_;
  if (p >= 1.0) return A_;
  const int K = intervals();
  const double hs = 2.0 / K;
  auto it = std::upper_bound(F_.begin(), F_.end(), p);
  int k = static_cast<int>(it - F_.begin()) - 1;
  k = std::clamp(k, 0, K - 1);
  double lo = -1.0 + k * hs, hi = lo + hs;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (eval_s(mid) < p ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  return clustered_ ? A_ * std::sin(0.5 * kPi * s) : A_ * s;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, F - i / n, (i + 1) / n - F});
  }
  return d;
}

}  // namespace bm
