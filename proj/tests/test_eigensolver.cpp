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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "brownmeasure/eigensolver.hpp"

using namespace bm;

namespace {

CMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cplx(g(eng), g(eng));
  return m;
}

// Greedy nearest matching distance between two spectra.
double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const cplx z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx u, cplx v) { return std::abs(u - z) < std::abs(v - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("diagonal and triangular matrices") {
  CMatrix d = CMatrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) d(i, i) = cplx(i - 2.0, 0.5 * i);
  auto ev = eigenvalues(d);
  std::vector<cplx> ref;
  for (int i = 0; i < 5; ++i) ref.push_back(d(i, i));
  CHECK(spectrum_distance(ev, ref) <= 1e-14);
  CMatrix u = random_matrix(6, 3).triangularView<Eigen::Upper>();
  ref.clear();
  for (int i = 0; i < 6; ++i) ref.push_back(u(i, i));
  CHECK(spectrum_distance(eigenvalues(u), ref) <= 1e-12);
}

TEST_CASE("companion matrix of z^3 - 1") {
  CMatrix c = CMatrix::Zero(3, 3);
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = 1.0;
  std::vector<cplx> ref = {1.0, std::polar(1.0, 2 * kPi / 3), std::polar(1.0, -2 * kPi / 3)};
  CHECK(spectrum_distance(eigenvalues(c), ref) <= 1e-10);
}

TEST_CASE("small and degenerate inputs") {
  CHECK(eigenvalues(CMatrix::Zero(0, 0)).empty());
  CMatrix one(1, 1);
  one(0, 0) = cplx(2.0, -1.0);
  CHECK(eigenvalues(one)[0] == cplx(2.0, -1.0));
  const auto z = eigenvalues(CMatrix::Zero(4, 4));
  for (const cplx v : z) CHECK(v == cplx(0.0, 0.0));
  CMatrix jordan = CMatrix::Identity(4, 4) * 3.0;
  for (int i = 0; i < 3; ++i) jordan(i, i + 1) = 1.0;
  for (const cplx v : eigenvalues(jordan)) CHECK(std::abs(v - 3.0) <= 1e-3);
  CHECK_THROWS_AS(eigenvalues(CMatrix::Zero(3, 4)), DomainError);
  CMatrix bad = CMatrix::Identity(3, 3);
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues(bad), DomainError);
}

TEST_CASE("random 8x8: determinant and trace") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const CMatrix m = random_matrix(8, seed);
    const auto ev = eigenvalues(m);
    REQUIRE(ev.size() == 8);
    cplx prod = 1.0, sum = 0.0;
    for (const cplx v : ev) {
      prod *= v;
      sum += v;
    }
    const cplx det = m.partialPivLu().determinant();
    CHECK(std::abs(prod - det) <= 1e-8 * std::abs(det));
    CHECK(std::abs(sum - m.trace()) <= 1e-10 * m.norm());
  }
}

TEST_CASE("agrees with Eigen's ComplexEigenSolver") {
  for (int n : {20, 64, 150}) {
    const CMatrix m = random_matrix(n, 100 + n);
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + n);
    const auto ev = eigenvalues(m);
    REQUIRE(ev.size() == static_cast<size_t>(n));
    CHECK(spectrum_distance(ev, ref) <= 1e-9 * m.norm());
  }
}

TEST_CASE("badly scaled matrices are balanced") {
  CMatrix m = random_matrix(12, 9);
  Eigen::VectorXd s(12);
  for (int i = 0; i < 12; ++i) s(i) = std::pow(10.0, i - 6);
  const CMatrix sm = s.asDiagonal() * m * s.cwiseInverse().asDiagonal();
  CHECK(spectrum_distance(eigenvalues(sm), eigenvalues(m)) <= 1e-9 * m.norm());
  CMatrix b = sm;
  const Eigen::VectorXd d = balance(b);
  const CMatrix back = d.asDiagonal() * b * d.cwiseInverse().asDiagonal();
  CHECK((back - sm).norm() <= 1e-12 * sm.norm());
}

TEST_CASE("hessenberg reduction is a similarity") {
  const CMatrix m = random_matrix(30, 5);
  CMatrix h = m;
  hessenberg_reduce(h);
  for (int j = 0; j < 30; ++j)
    for (int i = j + 2; i < 30; ++i) CHECK(h(i, j) == cplx(0.0, 0.0));
  CHECK(std::abs(h.trace() - m.trace()) <= 1e-11 * m.norm());
  CHECK(h.norm() == doctest::Approx(m.norm()).epsilon(1e-12));
}

TEST_CASE("eigenpairs backward error") {
  for (int n : {10, 60}) {
    const CMatrix m = random_matrix(n, 77 + n);
    const EigenPairs p = eigenpairs(m);
    CHECK(p.max_backward_error <= 1e-8);
    for (int k = 0; k < n; ++k) {
      const CVector v = p.vectors.col(k);
      CHECK((m * v - p.values[k] * v).norm() <= 1e-8 * m.norm());
    }
  }
}
