// Copyright 2026 The sitl1 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sitl1/svd.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <vector>

#include "sitl1/errors.hpp"

namespace sitl1 {

namespace {

constexpr double kJacobiTol = 1e-13;
constexpr int kMaxSweeps = 64;

// Extends an orthonormal column set to a full basis. Works on the residuals
// of the identity columns, always taking the one with the largest remaining
// norm (pivoting keeps the completion well conditioned), with one
// re-orthogonalization pass per accepted column.
void complete_basis(Matrix& u, int have) {
  int m = u.rows();
  if (have == m) return;
  std::vector<Vector> residual(m);
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    Vector r(m, 0.0);
    r[i] = 1.0;
    for (int j = 0; j < have; ++j) {
      double c = u(i, j);  // u.col(j) dot e_i
      for (int k = 0; k < m; ++k) r[k] -= c * u(k, j);
    }
    residual[i] = std::move(r);
  }
  for (int c = have; c < m; ++c) {
    int best = -1;
    double best_norm = 0.0;
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      double nr = norm2(residual[i]);
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
      }
    }
    if (best < 0 || best_norm < 1e-8)
      throw GramSchmidtBreakdown("basis completion found no independent direction");
    used[best] = true;
    Vector v = (1.0 / best_norm) * residual[best];
    // second pass against everything accepted so far
    for (int j = 0; j < c; ++j) {
      double proj = 0.0;
      for (int k = 0; k < m; ++k) proj += u(k, j) * v[k];
      for (int k = 0; k < m; ++k) v[k] -= proj * u(k, j);
    }
    double nv = norm2(v);
    if (nv < 1e-8) throw GramSchmidtBreakdown("basis completion collapsed");
    for (int k = 0; k < m; ++k) u(k, c) = v[k] / nv;
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      double proj = 0.0;
      for (int k = 0; k < m; ++k) proj += u(k, c) * residual[i][k];
      for (int k = 0; k < m; ++k) residual[i][k] -= proj * u(k, c);
    }
  }
}

// Decomposes a with rows >= cols.
SvdResult svd_tall(const Matrix& a) {
  int m = a.rows();
  int n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  // Columns reduced to cancellation dust have no usable direction left.
  // Rotating them endlessly against live columns keeps the sweep loop from
  // settling, so they are frozen relative to the (rotation invariant)
  // Frobenius norm.
  double fro2 = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) fro2 += a(i, j) * a(i, j);
  const double dead = fro2 * 1e-28;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p + 1 < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          app += wp * wp;
          aqq += wq * wq;
          apq += wp * wq;
        }
        if (app <= dead || aqq <= dead) continue;
        if (std::fabs(apq) <= kJacobiTol * std::sqrt(app * aqq)) continue;
        rotated = true;
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (int i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (int i = 0; i < n; ++i) {
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw SolverFailure("svd: Jacobi sweeps did not settle");

  Vector sigma(n);
  for (int j = 0; j < n; ++j) sigma[j] = norm2(w.col(j));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma[i] > sigma[j]; });

  SvdResult out;
  out.singular_values.resize(n);
  out.v = Matrix(n, n);
  out.u = Matrix(m, m);
  double sig_max = sigma.empty() ? 0.0 : sigma[order.empty() ? 0 : order[0]];
  int have = 0;
  for (int j = 0; j < n; ++j) {
    int src = order[j];
    out.singular_values[j] = sigma[src];
    out.v.set_col(j, v.col(src));
    // Zero columns carry no direction; they are filled by completion below.
    if (sigma[src] > sig_max * 1e-300 && sigma[src] > 0.0) {
      if (have != j) throw SolverFailure("svd: zero column ordered before nonzero one");
      out.u.set_col(j, (1.0 / sigma[src]) * w.col(src));
      ++have;
    }
  }
  complete_basis(out.u, have);
  return out;
}

}  // namespace

SvdResult svd(const Matrix& m) {
  if (m.rows() <= 0 || m.cols() <= 0) throw DimensionMismatch("svd of empty matrix");
  if (m.rows() >= m.cols()) return svd_tall(m);
  SvdResult t = svd_tall(m.transposed());
  SvdResult out;
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  out.singular_values = std::move(t.singular_values);
  return out;
}

double rank_tolerance(const SvdResult& s, int rows, int cols) {
  double sig_max = s.singular_values.empty() ? 0.0 : s.singular_values[0];
  return std::max(rows, cols) * DBL_EPSILON * sig_max;
}

int numerical_rank(const SvdResult& s, int rows, int cols) {
  double tol = rank_tolerance(s, rows, cols);
  int r = 0;
  for (double sig : s.singular_values)
    if (sig > tol) ++r;
  return r;
}

Matrix orthobasis_range(const Matrix& m) {
  SvdResult s = svd(m);
  int r = numerical_rank(s, m.rows(), m.cols());
  return s.u.col_range(0, r);
}

Matrix orthobasis_complement(const Matrix& m) {
  SvdResult s = svd(m);
  int r = numerical_rank(s, m.rows(), m.cols());
  if (r >= m.rows())
    throw FullRank("columns span the whole space; complement is trivial");
  return s.u.col_range(r, m.rows() - r);
}

Vector pseudo_inverse_apply(const SvdResult& s, const Vector& b) {
  int rows = s.u.rows();
  int cols = s.v.rows();
  if (static_cast<int>(b.size()) != rows)
    throw DimensionMismatch("pseudo_inverse_apply right-hand side length");
  double tol = rank_tolerance(s, rows, cols);
  Vector x(cols, 0.0);
  int k = static_cast<int>(s.singular_values.size());
  for (int j = 0; j < k; ++j) {
    double sig = s.singular_values[j];
    if (sig <= tol) break;
    double coef = dot(s.u.col(j), b) / sig;
    for (int i = 0; i < cols; ++i) x[i] += coef * s.v(i, j);
  }
  return x;
}

Vector pseudo_inverse_apply(const Matrix& m, const Vector& b) {
  return pseudo_inverse_apply(svd(m), b);
}

bool cholesky_factor(Matrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("cholesky of non-square matrix");
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return false;
    d = std::sqrt(d);
    m(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= m(i, k) * m(j, k);
      m(i, j) = s / d;
    }
  }
  // zero out the strictly upper part so the factor is self-describing
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = 0.0;
  return true;
}

Vector cholesky_solve(const Matrix& lower, Vector b) {
  int n = lower.rows();
  if (static_cast<int>(b.size()) != n)
    throw DimensionMismatch("cholesky_solve right-hand side length");
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= lower(i, k) * b[k];
    b[i] = s / lower(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= lower(k, i) * b[k];
    b[i] = s / lower(i, i);
  }
  return b;
}

}  // namespace sitl1
