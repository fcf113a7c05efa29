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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bm {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Error hierarchy. Every numerical failure surfaces as one of these.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfWedgeError : DomainError {
  using DomainError::DomainError;
};

struct OutsideDomainError : DomainError {
  using DomainError::DomainError;
};

struct PoleError : DomainError {
  using DomainError::DomainError;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonConvergenceError : std::runtime_error {
  NonConvergenceError(const std::string& what, double lo_, double hi_, int iters_)
      : std::runtime_error(what), lo(lo_), hi(hi_), iters(iters_) {}
  double lo;
  double hi;
  int iters;
};

// Selects the serial reference path or the OpenMP path of a grid kernel.
enum class Exec { serial, parallel };

// Maps an angle into (-pi, pi].
inline double normalize_angle(double theta) {
  double a = std::remainder(theta, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

struct PolarPoint {
  double r = 1.0;
  double theta = 0.0;

  static PolarPoint from_complex(cplx z) { return {std::abs(z), std::arg(z) == -kPi ? kPi : std::arg(z)}; }
  static PolarPoint make(double r, double theta) {
    if (!(r > 0.0)) throw DomainError("PolarPoint: radius must be positive, got " + std::to_string(r));
    return {r, normalize_angle(theta)};
  }
  cplx to_complex() const { return std::polar(r, theta); }
  double rho() const { return std::log(r); }
};

}  // namespace bm
