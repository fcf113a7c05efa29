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

#include <doctest.h>

#include <json.hpp>
#include <numeric>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/matsim.hpp"
#include "brownmeasure/prng.hpp"
#include "brownmeasure/region.hpp"

using namespace bm;

TEST_CASE("config validation") {
  SimConfig c;
  CHECK_NOTHROW(validate(c));
  c.N = 1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = SimConfig{};
  c.t = 2.0;
  c.steps = 150;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.steps = 200;
  CHECK_NOTHROW(validate(c));
  c.samples = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("zero time gives the identity") {
  SimConfig c;
  c.N = 5;
  c.t = 0.0;
  c.steps = 0;
  CHECK(simulate_gl(c).isApprox(CMatrix::Identity(5, 5)));
  c.group = Group::U;
  CHECK(simulate_u(c).isApprox(CMatrix::Identity(5, 5)));
}

TEST_CASE("streams are reproducible and distinct") {
  auto a = stream_engine(7, 0), b = stream_engine(7, 0), c = stream_engine(7, 1), d = stream_engine(8, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  SimConfig cfg;
  cfg.N = 16;
  const CMatrix m1 = simulate_gl(cfg, 3), m2 = simulate_gl(cfg, 3), m3 = simulate_gl(cfg, 4);
  CHECK(m1 == m2);
  CHECK(m1 != m3);
}

TEST_CASE("cloud is deterministic and independent of the execution mode") {
  SimConfig cfg;
  cfg.N = 24;
  cfg.samples = 5;
  cfg.t = 1.5;
  cfg.steps = 150;
  const EigenCloud a = simulate_cloud(cfg, Exec::parallel);
  const EigenCloud b = simulate_cloud(cfg, Exec::serial);
  const EigenCloud c = simulate_cloud(cfg, Exec::parallel);
  REQUIRE(a.eigenvalues.size() == 24u * 5u);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvalues == c.eigenvalues);
  for (const cplx z : a.eigenvalues) CHECK(std::isfinite(std::abs(z)));
  cfg.group = Group::U;
  const EigenCloud u1 = simulate_cloud(cfg, Exec::parallel), u2 = simulate_cloud(cfg, Exec::serial);
  CHECK(u1.eigenvalues == u2.eigenvalues);
}

TEST_CASE("GL second moment matches the compounded isometry") {
  // E tr(B B*) / N = (1 + dt)^steps for the Euler scheme
  SimConfig cfg;
  cfg.N = 64;
  cfg.t = 1.0;
  cfg.steps = 100;
  const int S = 120;
  std::vector<double> m(S);
  for (int s = 0; s < S; ++s) {
    const CMatrix B = simulate_gl(cfg, static_cast<std::uint64_t>(s));
    m[s] = B.squaredNorm() / cfg.N;
  }
  const double mean = std::accumulate(m.begin(), m.end(), 0.0) / S;
  double var = 0.0;
  for (double v : m) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (S - 1) / S);
  const double exact = std::pow(1.0 + cfg.t / cfg.steps, cfg.steps);
  CHECK(std::abs(mean - exact) <= 3.0 * se);
  CHECK(std::abs(mean - std::exp(1.0)) <= 3.0 * se + (std::exp(1.0) - exact));
}

TEST_CASE("U(N) stays unitary") {
  SimConfig cfg;
  cfg.group = Group::U;
  cfg.N = 40;
  cfg.t = 1.0;
  cfg.steps = 100;
  const CMatrix U = simulate_u(cfg);
  CHECK((U.adjoint() * U - CMatrix::Identity(40, 40)).norm() <= 1e-8);
  CMatrix far = CMatrix::Identity(3, 3) * 5.0;
  far(0, 1) = 2.0;
  unitarize(far);
  CHECK((far.adjoint() * far - CMatrix::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("large t runs stay finite") {
  SimConfig cfg;
  cfg.N = 8;
  cfg.t = 30.0;
  cfg.steps = 3000;
  double ls = 0.0;
  const CMatrix B = simulate_gl(cfg, 0, &ls);
  CHECK(B.allFinite());
  const EigenCloud c = simulate_cloud(cfg);
  for (const cplx z : c.eigenvalues) CHECK(std::isfinite(std::abs(z)));
}

TEST_CASE("report on a moderate cloud") {
  SimConfig cfg;
  cfg.N = 150;
  cfg.t = 2.0;
  cfg.steps = 200;
  cfg.samples = 2;
  const EigenCloud cloud = simulate_cloud(cfg);
  const BrownReport r = compare_to_brown(cloud, 2.0);
  CHECK(r.count == 300);
  CHECK(r.inside_fraction >= 0.95);
  CHECK(r.ks_arg <= 0.05);
  CHECK(r.ks_shadow <= 0.05);
  CHECK(r.flatness_chi2 < r.flatness_band99);
  CHECK_THROWS_AS(compare_to_brown(cloud, 3.0), DomainError);
  CHECK_THROWS_AS(compare_to_brown(EigenCloud{}, 2.0), DomainError);
  std::stringstream js;
  write_report_json(js, r, cfg);
  const auto j = nlohmann::json::parse(js.str());
  for (const char* k : {"inside_fraction", "ks_arg", "ks_shadow", "n_outside", "config"}) CHECK(j.contains(k));
  std::stringstream ec;
  write_eigen_csv(ec, cloud);
  const auto tab = csv::read(ec);
  REQUIRE(tab.rows.size() == cloud.eigenvalues.size());
  for (size_t k = 0; k < tab.rows.size(); ++k) {
    CHECK(tab.rows[k][0] == cloud.eigenvalues[k].real());
    CHECK(tab.rows[k][1] == cloud.eigenvalues[k].imag());
  }
}

TEST_CASE("arg-KS does not grow with N") {
  // 8 repetitions per size, 3 sigma band on the difference of means
  const int sizes[] = {25, 50, 100};
  double mean[3], se[3];
  for (int i = 0; i < 3; ++i) {
    std::vector<double> ks;
    for (int rep = 0; rep < 8; ++rep) {
      SimConfig cfg;
      cfg.N = sizes[i];
      cfg.t = 2.0;
      cfg.steps = 200;
      cfg.seed = 1000 + rep;
      ks.push_back(compare_to_brown(simulate_cloud(cfg), 2.0).ks_arg);
    }
    mean[i] = std::accumulate(ks.begin(), ks.end(), 0.0) / 8.0;
    double v = 0.0;
    for (double k : ks) v += (k - mean[i]) * (k - mean[i]);
    se[i] = std::sqrt(v / 7.0 / 8.0);
    MESSAGE("N=" << sizes[i] << " mean ks " << mean[i] << " se " << se[i]);
  }
  for (int i = 0; i + 1 < 3; ++i)
    CHECK(mean[i + 1] <= mean[i] + 3.0 * std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1]));
}

TEST_CASE("unitary KS at reduced size") {
  SimConfig cfg;
  cfg.group = Group::U;
  cfg.N = 128;
  cfg.t = 1.0;
  cfg.steps = 200;
  CHECK(unitary_ks(simulate_cloud(cfg), 1.0) <= 0.05);
}
