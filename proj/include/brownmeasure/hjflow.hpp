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

#include <iosfwd>
#include <vector>

#include "brownmeasure/common.hpp"

namespace bm {

struct HJState {
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double pa = 0.0;
  double pb = 0.0;
  double px = 0.0;
  double t = 0.0;
  double L = 0.0;  // running integral of x p_x
};

struct HJConstants {
  cplx lambda0;
  double x0 = 0.0;
  double r0 = 0.0;
  double theta0 = 0.0;
  double p0 = 0.0;
  double delta = 0.0;
  double delta_minus_2 = 0.0;
  double C = 0.0;
  double Psi = 0.0;
  double H0 = 0.0;
  double y0 = 0.0;
  double a_sq = 0.0;
  double t_star = 0.0;
};

double hamiltonian(const HJState& s);

// Right-hand side of Hamilton's equations; the L slot carries x p_x.
HJState hamiltonian_flow(const HJState& s);

// Psi = x p_x + (a p_a + b p_b)/2.
double psi_of(const HJState& s);
// a p_b - b p_a.
double angular_momentum(const HJState& s);

HJConstants make_constants(cplx lambda0, double x0);

struct HJInit {
  HJState state;
  HJConstants constants;
};

HJInit init_state(cplx lambda0, double x0);

// cosh(a t) and sinh(a t)/a from a^2, even in a.
struct EvenCoshSinh {
  double ch;
  double sh_over_a;
};
EvenCoshSinh even_cosh_sinh(double a_sq, double t);
// tanh(a t)/a from a^2.
double even_tanh_over_a(double a_sq, double t);

double px_closed_form(const HJConstants& c, double t);
// x(t) = x0 p0^2 e^{-Ct}/p_x(t)^2.
double x_closed_form(const HJConstants& c, double t);
// |lambda(t)|^2 from H, Psi and the two closed forms above.
double lambda_sq_closed_form(const HJConstants& c, double t);

double t_star(cplx lambda0, double x0);
double g_of_delta(double theta0, double delta);

double x0_for_lifetime(double t, cplx lambda0);
cplx lambda_t_map(double t, cplx lambda0);
cplx inverse_lambda_t(double t, cplx lambda);

struct Trajectory {
  HJConstants constants;
  std::vector<HJState> states;
};

// Classical RK4. The step is halved while it exceeds (t_star - t)/64.
Trajectory integrate(const HJState& s0, const HJConstants& c, double t_end, double dt);
Trajectory integrate(const HJState& s0, double t_end, double dt);

// S(t, lambda(t), x(t)) along the characteristic from (lambda0, x0).
double hj_value_S(double t, cplx lambda0, double x0);
// Same value with log|lambda(t)| taken from a recorded state.
double hj_value_S(const HJConstants& c, const HJState& s);

double s_t(double t, cplx lambda);

struct ChartPoint {
  cplx lambda0;
  double x0;
};

// (lambda0, x0) whose characteristic reaches (lambda, x) at time t, x > 0.
ChartPoint chart_inverse(double t, cplx lambda, double x, const ChartPoint* guess = nullptr);

// S(t, lambda, x) for x > 0 through the chart.
double S_value(double t, cplx lambda, double x, const ChartPoint* guess = nullptr);

double pde_residual(double t, cplx lambda, double x, double h);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_constants_json(std::ostream& os, const HJConstants& c);

}  // namespace bm
