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

#include <boost/math/tools/roots.hpp>
#include <sstream>

#include "brownmeasure/csv.hpp"
#include "brownmeasure/region.hpp"

using namespace bm;

namespace {

// Direct transcription, no removable-singularity handling.
double T_direct(double r, double th) { return (r * r + 1.0 - 2.0 * r * std::cos(th)) * std::log(r * r) / (r * r - 1.0); }

double root_oracle(double t, double th) {
  auto f = [&](double r) { return T_direct(r, th) - t; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve(f, 1.0 + 1e-9, 1e6, tol, it);
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gobbling time anchors") {
  CHECK(gobbling_time(1.0, 0.0) == doctest::Approx(0.0));
  CHECK(gobbling_time(1.0, kPi) == doctest::Approx(4.0).epsilon(1e-14));
  const double e = std::exp(1.0);
  CHECK(gobbling_time(e, 0.0) == doctest::Approx(2.0 * (e - 1.0) / (e + 1.0)).epsilon(1e-14));
  CHECK(gobbling_time(2.0, kPi / 2) == doctest::Approx(5.0 * std::log(4.0) / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(gobbling_time(0.0, 0.3), DomainError);
  CHECK_THROWS_AS(gobbling_time(-1.0, 0.3), DomainError);
  CHECK_THROWS_AS(PolarPoint::make(0.0, 0.0), DomainError);
}

TEST_CASE("gobbling time matches the direct formula away from r = 1") {
  for (double r : {0.05, 0.3, 0.9, 0.999, 1.001, 1.5, 7.0, 20.0})
    for (double th : {-3.0, -1.0, 0.0, 0.4, 2.5, kPi}) {
      const double ref = T_direct(r, th);
      CHECK(gobbling_time(r, th) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("gobbling time is continuous through r = 1") {
  for (double th : {0.1, 1.0, 3.0}) {
    const double at1 = gobbling_time(1.0, th);
    CHECK(at1 == doctest::Approx(2.0 - 2.0 * std::cos(th)).epsilon(1e-15));
    CHECK(gobbling_time(1.0 + 1e-9, th) == doctest::Approx(at1).epsilon(1e-8));
    CHECK(gobbling_time(1.0 - 1e-9, th) == doctest::Approx(at1).epsilon(1e-8));
  }
}

TEST_CASE("property: inversion and conjugation symmetry of T") {
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double r = std::exp(std::log(0.05) + (std::log(20.0) - std::log(0.05)) * i / 63.0);
    for (int j = 0; j < 64; ++j) {
      const double th = -kPi + 2.0 * kPi * (j + 0.5) / 64.0;
      const double T = gobbling_time(r, th);
      worst = std::max(worst, std::abs(T - gobbling_time(1.0 / r, -th)) / (1.0 + T));
      worst = std::max(worst, std::abs(T - gobbling_time(r, -th)) / (1.0 + T));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("property: T >= 0 with its only zero at 1") {
  for (double r : {0.2, 0.7, 1.0, 1.3, 5.0})
    for (double th : {-2.0, -0.01, 0.0, 0.01, 2.0}) {
      const double T = gobbling_time(r, th);
      CHECK(T >= 0.0);
      if (!(r == 1.0 && th == 0.0)) CHECK(T > 0.0);
    }
}

TEST_CASE("theta_max") {
  CHECK(theta_max(2.0) == doctest::Approx(kPi / 2));
  CHECK(theta_max(4.0) == doctest::Approx(kPi));
  CHECK(theta_max(5.0) == kPi);
  CHECK(theta_max(1.0) == doctest::Approx(std::acos(0.5)));
  CHECK_THROWS_AS(theta_max(0.0), DomainError);
  CHECK_THROWS_AS(theta_max(-2.0), DomainError);
}

TEST_CASE("outer radius against a toms748 oracle") {
  const double e = std::exp(1.0);
  CHECK(outer_radius(2.0 * (e - 1.0) / (e + 1.0), 0.0) == doctest::Approx(e).epsilon(1e-11));
  const double r1 = outer_radius(1.0, 0.0);
  CHECK(r1 > 1.0);
  CHECK(r1 < 3.0);
  CHECK((r1 - 1.0) * std::log(r1 * r1) == doctest::Approx(r1 + 1.0).epsilon(1e-11));
  for (double t : {0.3, 1.0, 2.0, 3.9, 4.5, 7.0, 15.0})
    for (double s : {-0.95, -0.5, 0.0, 0.3, 0.99}) {
      const double th = s * theta_max(t);
      CHECK(outer_radius(t, th) == doctest::Approx(root_oracle(t, th)).epsilon(1e-10));
    }
}

TEST_CASE("outer radius errors and limits") {
  CHECK_THROWS_AS(outer_radius(2.0, kPi / 2), OutOfWedgeError);
  CHECK_THROWS_AS(outer_radius(2.0, 2.0), OutOfWedgeError);
  CHECK_THROWS_AS(outer_radius(-1.0, 0.0), DomainError);
  CHECK(outer_radius(4.0, kPi - 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(outer_radius_closed(2.0, kPi / 2) == 1.0);
}

TEST_CASE("contains") {
  CHECK(contains(1.0, cplx(1.0, 0.0)) == Membership::inside);
  CHECK(contains(4.0, cplx(-1.0, 0.0)) == Membership::boundary);
  CHECK(contains(3.0, cplx(0.01, 0.0)) == Membership::outside);
  CHECK(contains(3.0, cplx(0.0, 0.0)) == Membership::outside);
  const double r = outer_radius(2.0, 0.7);
  CHECK(contains(2.0, PolarPoint{r, 0.7}) == Membership::boundary);
  CHECK(contains(2.0, PolarPoint{r * 1.01, 0.7}) == Membership::outside);
  CHECK(contains(2.0, PolarPoint{r * 0.99, 0.7}) == Membership::inside);
  CHECK(contains(2.0, PolarPoint{1.0 / (r * 1.01), 0.7}) == Membership::outside);
}

TEST_CASE("sample_boundary invariants") {
  for (double t : {0.5, 2.0, 4.0, 4.1, 7.0}) {
    const RegionBoundary b = sample_boundary(t, 64);
    CHECK(b.samples.size() == 64);
    CHECK(b.closes_on_circle == (t <= 4.0));
    for (size_t k = 0; k < b.samples.size(); ++k) {
      const auto& s = b.samples[k];
      CHECK(std::abs(gobbling_time(s.r_outer, s.theta) - t) <= 10 * b.tol * std::max(1.0, t));
      CHECK(s.r_outer > 1.0);
      CHECK(std::abs(s.theta) < b.theta_max + 1e-15);
      const auto& m = b.samples[b.samples.size() - 1 - k];
      CHECK(m.theta == doctest::Approx(-s.theta));
      CHECK(m.r_outer == doctest::Approx(s.r_outer).epsilon(1e-12));
    }
    // monotone in theta on each half for t <= 4
    if (t <= 4.0)
      for (size_t k = 32; k + 1 < 64; ++k) CHECK(b.samples[k + 1].r_outer <= b.samples[k].r_outer);
  }
  const RegionBoundary b33 = sample_boundary(2.0, 33);
  CHECK(b33.samples.size() == 33);
  CHECK_THROWS_AS(sample_boundary(2.0, 8), DomainError);
}

TEST_CASE("large t boundary resembles an annulus of inner radius exp(-t/2)") {
  const RegionBoundary b = sample_boundary(7.0, 128);
  double mn = 1e300;
  for (const auto& s : b.samples) mn = std::min(mn, 1.0 / s.r_outer);
  CHECK(mn == doctest::Approx(std::exp(-3.5)).epsilon(0.1));
}

TEST_CASE("serial and parallel boundaries are identical") {
  const auto a = sample_boundary(3.0, 200, Exec::serial);
  const auto b = sample_boundary(3.0, 200, Exec::parallel);
  for (size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(a.samples[k].theta == b.samples[k].theta);
    CHECK(a.samples[k].r_outer == b.samples[k].r_outer);
  }
}

TEST_CASE("boundary csv and svg") {
  const auto b = sample_boundary(2.0, 32);
  std::stringstream ss;
  write_boundary_csv(ss, b);
  const auto tab = csv::read(ss);
  REQUIRE(tab.rows.size() == 32);
  for (size_t k = 0; k < 32; ++k) {
    CHECK(tab.rows[k][0] == b.samples[k].theta);
    CHECK(tab.rows[k][1] == b.samples[k].r_outer);
  }
  std::stringstream svg;
  write_boundary_svg(svg, b);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(svg.str().find("polyline") != std::string::npos);
}
