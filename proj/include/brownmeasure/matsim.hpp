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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "brownmeasure/eigensolver.hpp"

namespace bm {

enum class Group { GL, U };

const char* to_string(Group g);

struct SimConfig {
  int N = 100;
  double t = 1.0;
  int steps = 100;
  std::uint64_t seed = 7;
  int samples = 1;
  Group group = Group::GL;
  int project_every = 16;  // U(N) only; 0 disables re-unitarization
};

// Throws ConfigError when N < 2, t < 0, samples < 1 or steps < ceil(100 t).
void validate(const SimConfig& cfg);

// One Euler-Maruyama realization of B_t. *log_scale receives the total
// log of the rescaling applied to keep entries finite.
CMatrix simulate_gl(const SimConfig& cfg, std::uint64_t sample = 0, double* log_scale = nullptr);

// One realization of U_t with polar re-unitarization every project_every steps.
CMatrix simulate_u(const SimConfig& cfg, std::uint64_t sample = 0);

// Newton-Schulz polar projection onto U(N).
void unitarize(CMatrix& u);

struct EigenCloud {
  std::vector<cplx> eigenvalues;
  SimConfig provenance;
};

EigenCloud simulate_cloud(const SimConfig& cfg, Exec exec = Exec::parallel);

struct BrownReport {
  double t = 0.0;
  std::size_t count = 0;
  double tol_dilate = 0.0;
  double inside_fraction = 0.0;
  double ks_arg = 0.0;
  double ks_shadow = 0.0;
  std::size_t n_outside = 0;    // outside the closure of Sigma_t
  std::size_t n_projected = 0;  // angle clamped onto the wedge before Phi_t
  double flatness_chi2 = 0.0;
  double flatness_band99 = 0.0;
  int flatness_bins = 0;
  std::size_t flatness_count = 0;
};

inline constexpr double kDefaultDilate = 0.05;

// Statistics of a GL cloud against the Brown measure and nu_t.
BrownReport compare_to_brown(const EigenCloud& cloud, double t, double tol_dilate = kDefaultDilate);

// KS distance between eigen-angles of a U(N) cloud and nu_t.
double unitary_ks(const EigenCloud& cloud, double t);

void write_eigen_csv(std::ostream& os, const EigenCloud& c);
void write_provenance_json(std::ostream& os, const SimConfig& cfg);
void write_report_json(std::ostream& os, const BrownReport& r, const SimConfig& cfg);

}  // namespace bm
