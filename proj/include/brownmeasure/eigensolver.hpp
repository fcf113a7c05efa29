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

#include <Eigen/Dense>
#include <vector>

#include "brownmeasure/common.hpp"

namespace bm {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Diagonal similarity by powers of two that equalizes row and column norms.
// Returns the scaling vector d with A <- D^{-1} A D.
Eigen::VectorXd balance(CMatrix& a);

// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(CMatrix& a);

// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR.
// Throws NonConvergenceError after 30 n iterations.
std::vector<cplx> hessenberg_qr_eigenvalues(CMatrix h);

// All eigenvalues of a general complex matrix.
std::vector<cplx> eigenvalues(const CMatrix& m);

struct EigenPairs {
  std::vector<cplx> values;
  CMatrix vectors;  // unit columns
  double max_backward_error = 0.0;  // max ||A v - lambda v|| / ||A||
};

// Verification mode: eigenvalues plus inverse-iteration eigenvectors.
EigenPairs eigenpairs(const CMatrix& m);

}  // namespace bm
