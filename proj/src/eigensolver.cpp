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

#include "brownmeasure/eigensolver.hpp"

#include <algorithm>
#include <limits>

namespace bm {

namespace {

inline double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

// c real, s complex with [c s; -conj(s) c] [f; g] = [r; 0].
inline void givens(cplx f, cplx g, double& c, cplx& s) {
  if (g == cplx(0.0, 0.0)) {
    c = 1.0;
    s = 0.0;
    return;
  }
  const double af = std::abs(f), ag = std::abs(g);
  if (af == 0.0) {
    c = 0.0;
    s = std::conj(g) / ag;
    return;
  }
  const double nrm = std::hypot(af, ag);
  c = af / nrm;
  s = (f / af) * std::conj(g) / nrm;
}

// Eigenvalues of [a b; c d], the first one closest to d.
inline void eig2(cplx a, cplx b, cplx c, cplx d, cplx& near_d, cplx& other) {
  const cplx half = 0.5 * (a - d);
  const cplx disc = std::sqrt(half * half + b * c);
  const cplx m1 = d + half + disc;
  const cplx m2 = d + half - disc;
  if (std::abs(m1 - d) <= std::abs(m2 - d)) {
    near_d = m1;
    other = m2;
  } else {
    near_d = m2;
    other = m1;
  }
}

}  // namespace

Eigen::VectorXd balance(CMatrix& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  const double radix = 2.0, b2 = radix * radix;
  bool done = false;
  int sweeps = 0;
  while (!done && sweeps++ < 100) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= b2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= b2;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

void hessenberg_reduce(CMatrix& a) {
  const Eigen::Index n = a.rows();
  CVector v, w, u;
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    const cplx alpha = a(k + 1, k);
    const double xnorm = a.col(k).segment(k + 2, m - 1).norm();
    if (xnorm == 0.0 && alpha.imag() == 0.0) continue;
    const double nrm = std::hypot(std::abs(alpha), xnorm);
    const double beta = alpha.real() >= 0.0 ? -nrm : nrm;
    const cplx tau = (beta - alpha) / beta;
    v = a.col(k).segment(k + 1, m) / (alpha - beta);
    v(0) = 1.0;
    // left: (I - conj(tau) v v^H) applied to rows k+1.., columns k..
    auto left = a.block(k + 1, k, m, n - k);
    w.noalias() = left.adjoint() * v;
    left.noalias() -= std::conj(tau) * v * w.adjoint();
    // right: A (I - tau v v^H) on columns k+1..
    auto right = a.block(0, k + 1, n, m);
    u.noalias() = right * v;
    right.noalias() -= tau * u * v.adjoint();
    a(k + 1, k) = beta;
    a.col(k).segment(k + 2, m - 1).setZero();
  }
}

std::vector<cplx> hessenberg_qr_eigenvalues(CMatrix h) {
  const Eigen::Index n = h.rows();
  std::vector<cplx> eig(static_cast<size_t>(n));
  if (n == 0) return eig;
  const double eps = std::numeric_limits<double>::epsilon();
  double hnorm = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= std::min(j + 1, n - 1); ++i) hnorm = std::max(hnorm, abs1(h(i, j)));
  if (hnorm == 0.0) return eig;

  std::vector<double> cs(static_cast<size_t>(n));
  std::vector<cplx> ss(static_cast<size_t>(n));
  const long max_total = 30L * n;
  long total = 0;
  int its = 0;
  Eigen::Index hi = n - 1;
  cplx* H = h.data();
  const Eigen::Index ld = n;
  auto at = [&](Eigen::Index i, Eigen::Index j) -> cplx& { return H[i + j * ld]; };

  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = at(0, 0);
      break;
    }
    Eigen::Index l = hi;
    for (; l > 0; --l) {
      double s = abs1(at(l - 1, l - 1)) + abs1(at(l, l));
      if (s == 0.0) s = hnorm;
      if (abs1(at(l, l - 1)) <= eps * s) {
        at(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      eig[hi] = at(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (l == hi - 1) {
      cplx e1, e2;
      eig2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi), e1, e2);
      eig[hi] = e1;
      eig[hi - 1] = e2;
      hi -= 2;
      its = 0;
      continue;
    }
    if (total >= max_total)
      throw NonConvergenceError("eigenvalues: QR iteration did not converge after " + std::to_string(total) +
                                    " iterations, " + std::to_string(hi + 1) + " eigenvalues left",
                                static_cast<double>(l), static_cast<double>(hi), static_cast<int>(total));

    cplx sigma;
    if (its == 10 || its == 20) {
      sigma = at(hi, hi) + std::abs(at(hi, hi - 1).real()) + std::abs(at(hi - 1, hi - 2 >= 0 ? hi - 2 : 0).real());
    } else {
      cplx other;
      eig2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi), sigma, other);
    }
    ++its;
    ++total;

    for (Eigen::Index i = l; i <= hi; ++i) at(i, i) -= sigma;
    for (Eigen::Index k = l; k < hi; ++k) {
      double c;
      cplx s;
      givens(at(k, k), at(k + 1, k), c, s);
      cs[k] = c;
      ss[k] = s;
      const cplx sc = std::conj(s);
      for (Eigen::Index j = k; j <= hi; ++j) {
        const cplx x = at(k, j), y = at(k + 1, j);
        at(k, j) = c * x + s * y;
        at(k + 1, j) = -sc * x + c * y;
      }
      at(k + 1, k) = 0.0;
    }
    for (Eigen::Index k = l; k < hi; ++k) {
      const double c = cs[k];
      const cplx s = ss[k], sc = std::conj(s);
      cplx* ck = H + k * ld;
      cplx* ck1 = H + (k + 1) * ld;
      for (Eigen::Index i = l; i <= k + 1; ++i) {
        const cplx x = ck[i], y = ck1[i];
        ck[i] = c * x + sc * y;
        ck1[i] = -s * x + c * y;
      }
    }
    for (Eigen::Index i = l; i <= hi; ++i) at(i, i) += sigma;
  }
  return eig;
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("eigenvalues: matrix must be square");
  if (!m.allFinite()) throw DomainError("eigenvalues: non-finite entries");
  CMatrix a = m;
  balance(a);
  hessenberg_reduce(a);
  return hessenberg_qr_eigenvalues(std::move(a));
}

EigenPairs eigenpairs(const CMatrix& m) {
  EigenPairs out;
  out.values = eigenvalues(m);
  const Eigen::Index n = m.rows();
  out.vectors.resize(n, n);
  const double anorm = std::max(m.norm(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = out.values[static_cast<size_t>(k)];
    // Small perturbation keeps the factorization nonsingular.
    const cplx shift = lam + cplx(eps * anorm, eps * anorm);
    Eigen::PartialPivLU<CMatrix> lu(m - shift * CMatrix::Identity(n, n));
    CVector v = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i) v(i) *= cplx(1.0, 0.1 * static_cast<double>(i % 7));
    v.normalize();
    double best = std::numeric_limits<double>::infinity();
    CVector best_v = v;
    for (int it = 0; it < 4; ++it) {
      v = lu.solve(v);
      const double nv = v.norm();
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      v /= nv;
      const double res = (m * v - lam * v).norm() / anorm;
      if (res < best) {
        best = res;
        best_v = v;
      }
      if (res < 1e-14) break;
    }
    out.vectors.col(k) = best_v;
    out.max_backward_error = std::max(out.max_backward_error, best);
  }
  return out;
}

}  // namespace bm
