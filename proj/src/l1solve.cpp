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

#include "sitl1/l1solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sitl1/errors.hpp"
#include "sitl1/svd.hpp"

namespace sitl1 {

namespace {

constexpr double kStepScale = 0.9995;
constexpr double kDegeneracyTol = 1e-6;
constexpr double kStallStep = 1e-12;

double max_step(const Vector& x, const Vector& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < x.size(); ++i)
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  return a;
}

// SPD solve with escalating diagonal jitter; the barrier scalings become
// extreme near convergence and can push the normal matrix past the edge of
// positive definiteness in floating point.
Vector solve_normal(const Matrix& m, const Vector& rhs) {
  double peak = 1.0;
  for (int i = 0; i < m.rows(); ++i) peak = std::max(peak, m(i, i));
  for (double jitter : {0.0, 1e-13, 1e-10, 1e-7}) {
    Matrix trial = m;
    if (jitter > 0.0)
      for (int i = 0; i < trial.rows(); ++i) trial(i, i) += jitter * peak;
    if (cholesky_factor(trial)) return cholesky_solve(trial, rhs);
  }
  throw SolverFailure("normal equations are numerically singular");
}

// Core interior-point iteration for  min c'(u+v) s.t. op(u - v) = rhs0 (+ a
// free block for LAD). The two public problems share everything except the
// constraint operator, so each gets its own loop below rather than an
// abstraction layer; the loops follow the same Mehrotra scheme:
// affine direction, centering parameter (mu_aff/mu)^3, one corrector.

struct BpState {
  Vector u, v, su, sv, lambda;
};

// min 1'(u+v) s.t. f(u-v) = b. e_start must satisfy f e_start = b, which
// makes the whole iteration primal and dual feasible from the first step.
SolveReport bp_ipm(const Matrix& f, const Vector& b, const Vector& e_start,
                   const SolverConfig& cfg) {
  const int m = f.rows();
  const int n = f.cols();
  const Matrix ft = f.transposed();

  Vector u(n), v(n), su(n, 1.0), sv(n, 1.0), lambda(m, 0.0);
  double beta = 0.5 + 0.1 * norm_inf(e_start);
  for (int i = 0; i < n; ++i) {
    u[i] = std::max(e_start[i], 0.0) + beta;
    v[i] = std::max(-e_start[i], 0.0) + beta;
  }

  SolveReport rep;
  rep.status = SolveStatus::MaxIter;

  Vector rdu(n), rdv(n), du_(n), dv_(n), bigD(n), g(n);
  Vector dU(n), dV(n), dSu(n), dSv(n), dL(m);
  Vector rcu(n), rcv(n);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    Vector e = u - v;
    Vector rp = b - f * e;
    Vector ftl = ft * lambda;
    for (int i = 0; i < n; ++i) {
      rdu[i] = 1.0 - ftl[i] - su[i];
      rdv[i] = 1.0 + ftl[i] - sv[i];
    }
    double gap = dot(u, su) + dot(v, sv);
    double prim_res = norm2(rp);
    double dual_res = std::sqrt(norm2(rdu) * norm2(rdu) + norm2(rdv) * norm2(rdv));
    if (!std::isfinite(gap)) throw SolverFailure("interior point diverged");
    if (prim_res <= cfg.feas_tol && dual_res <= cfg.feas_tol && gap <= cfg.gap_tol) {
      rep.status = SolveStatus::Optimal;
      break;
    }

    double mu = gap / (2 * n);
    for (int i = 0; i < n; ++i) {
      du_[i] = u[i] / su[i];
      dv_[i] = v[i] / sv[i];
      bigD[i] = du_[i] + dv_[i];
    }
    Matrix M(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += f(i, k) * bigD[k] * f(j, k);
        M(i, j) = s;
        M(j, i) = s;
      }

    auto direction = [&](const Vector& rcu_, const Vector& rcv_) {
      for (int i = 0; i < n; ++i)
        g[i] = rcu_[i] / su[i] - du_[i] * rdu[i] - rcv_[i] / sv[i] + dv_[i] * rdv[i];
      Vector rhs = rp - f * g;
      dL = solve_normal(M, rhs);
      Vector h = ft * dL;
      for (int i = 0; i < n; ++i) {
        dU[i] = rcu_[i] / su[i] - du_[i] * rdu[i] + du_[i] * h[i];
        dV[i] = rcv_[i] / sv[i] - dv_[i] * rdv[i] - dv_[i] * h[i];
        dSu[i] = rdu[i] - h[i];
        dSv[i] = rdv[i] + h[i];
      }
    };

    for (int i = 0; i < n; ++i) {
      rcu[i] = -u[i] * su[i];
      rcv[i] = -v[i] * sv[i];
    }
    direction(rcu, rcv);
    double ap = std::min({1.0, max_step(u, dU), max_step(v, dV)});
    double ad = std::min({1.0, max_step(su, dSu), max_step(sv, dSv)});
    double mu_aff = 0.0;
    for (int i = 0; i < n; ++i) {
      mu_aff += (u[i] + ap * dU[i]) * (su[i] + ad * dSu[i]);
      mu_aff += (v[i] + ap * dV[i]) * (sv[i] + ad * dSv[i]);
    }
    mu_aff /= 2 * n;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    for (int i = 0; i < n; ++i) {
      rcu[i] = sigma * mu - u[i] * su[i] - dU[i] * dSu[i];
      rcv[i] = sigma * mu - v[i] * sv[i] - dV[i] * dSv[i];
    }
    direction(rcu, rcv);
    ap = std::min(1.0, kStepScale * std::min(max_step(u, dU), max_step(v, dV)));
    ad = std::min(1.0, kStepScale * std::min(max_step(su, dSu), max_step(sv, dSv)));
    if (ap < kStallStep && ad < kStallStep) break;
    for (int i = 0; i < n; ++i) {
      u[i] += ap * dU[i];
      v[i] += ap * dV[i];
      su[i] += ad * dSu[i];
      sv[i] += ad * dSv[i];
    }
    for (int i = 0; i < m; ++i) lambda[i] += ad * dL[i];
  }

  Vector e = u - v;
  rep.solution = e;
  rep.objective = norm1(e);
  rep.primal_residual = norm2(f * e - b);
  rep.duality_gap = dot(u, su) + dot(v, sv);
  if (rep.status == SolveStatus::Optimal) {
    Vector rho = ft * lambda;
    double scale = std::max(1.0, norm_inf(e));
    for (int i = 0; i < n; ++i) {
      if (std::fabs(e[i]) <= kDegeneracyTol * scale &&
          std::fabs(rho[i]) >= 1.0 - kDegeneracyTol) {
        rep.status = SolveStatus::Degenerate;
        break;
      }
    }
  }
  return rep;
}

// min w'(u+v) s.t. a x + u - v = y, x free. Feasible start: x from least
// squares, lambda = 0, slacks = w.
SolveReport lad_ipm(const Matrix& a, const Vector& y, const Vector& w,
                    const Vector& x_start, const SolverConfig& cfg, Vector* x_out) {
  const int n = a.rows();
  const int r = a.cols();
  const Matrix at = a.transposed();

  Vector x = x_start;
  Vector e0 = y - a * x;
  Vector u(n), v(n), su = w, sv = w, lambda(n, 0.0);
  double beta = 0.5 + 0.1 * norm_inf(e0);
  for (int i = 0; i < n; ++i) {
    u[i] = std::max(e0[i], 0.0) + beta;
    v[i] = std::max(-e0[i], 0.0) + beta;
  }

  SolveReport rep;
  rep.status = SolveStatus::MaxIter;

  Vector rdu(n), rdv(n), du_(n), dv_(n), bigE(n), g(n);
  Vector dU(n), dV(n), dSu(n), dSv(n), dL(n), dX(r);
  Vector rcu(n), rcv(n);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    Vector ax = a * x;
    Vector rp(n);
    for (int i = 0; i < n; ++i) rp[i] = y[i] - ax[i] - u[i] + v[i];
    Vector rdx = at * lambda;
    for (double& c : rdx) c = -c;
    for (int i = 0; i < n; ++i) {
      rdu[i] = w[i] - lambda[i] - su[i];
      rdv[i] = w[i] + lambda[i] - sv[i];
    }
    double gap = dot(u, su) + dot(v, sv);
    double prim_res = norm2(rp);
    double dual_res = std::sqrt(norm2(rdx) * norm2(rdx) + norm2(rdu) * norm2(rdu) +
                                norm2(rdv) * norm2(rdv));
    if (!std::isfinite(gap)) throw SolverFailure("interior point diverged");
    if (prim_res <= cfg.feas_tol && dual_res <= cfg.feas_tol && gap <= cfg.gap_tol) {
      rep.status = SolveStatus::Optimal;
      break;
    }

    double mu = gap / (2 * n);
    for (int i = 0; i < n; ++i) {
      du_[i] = u[i] / su[i];
      dv_[i] = v[i] / sv[i];
      bigE[i] = du_[i] + dv_[i];
    }
    Matrix N(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += a(k, i) * a(k, j) / bigE[k];
        N(i, j) = s;
        N(j, i) = s;
      }

    auto direction = [&](const Vector& rcu_, const Vector& rcv_) {
      for (int i = 0; i < n; ++i)
        g[i] = rcu_[i] / su[i] - du_[i] * rdu[i] - rcv_[i] / sv[i] + dv_[i] * rdv[i];
      Vector rhs(r, 0.0);
      for (int j = 0; j < r; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += a(k, j) * (rp[k] - g[k]) / bigE[k];
        rhs[j] = s - rdx[j];
      }
      dX = solve_normal(N, rhs);
      Vector adx = a * dX;
      for (int i = 0; i < n; ++i) dL[i] = (rp[i] - g[i] - adx[i]) / bigE[i];
      for (int i = 0; i < n; ++i) {
        dU[i] = rcu_[i] / su[i] - du_[i] * rdu[i] + du_[i] * dL[i];
        dV[i] = rcv_[i] / sv[i] - dv_[i] * rdv[i] - dv_[i] * dL[i];
        dSu[i] = rdu[i] - dL[i];
        dSv[i] = rdv[i] + dL[i];
      }
    };

    for (int i = 0; i < n; ++i) {
      rcu[i] = -u[i] * su[i];
      rcv[i] = -v[i] * sv[i];
    }
    direction(rcu, rcv);
    double ap = std::min({1.0, max_step(u, dU), max_step(v, dV)});
    double ad = std::min({1.0, max_step(su, dSu), max_step(sv, dSv)});
    double mu_aff = 0.0;
    for (int i = 0; i < n; ++i) {
      mu_aff += (u[i] + ap * dU[i]) * (su[i] + ad * dSu[i]);
      mu_aff += (v[i] + ap * dV[i]) * (sv[i] + ad * dSv[i]);
    }
    mu_aff /= 2 * n;
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    for (int i = 0; i < n; ++i) {
      rcu[i] = sigma * mu - u[i] * su[i] - dU[i] * dSu[i];
      rcv[i] = sigma * mu - v[i] * sv[i] - dV[i] * dSv[i];
    }
    direction(rcu, rcv);
    ap = std::min(1.0, kStepScale * std::min(max_step(u, dU), max_step(v, dV)));
    ad = std::min(1.0, kStepScale * std::min(max_step(su, dSu), max_step(sv, dSv)));
    if (ap < kStallStep && ad < kStallStep) break;
    for (int i = 0; i < n; ++i) {
      u[i] += ap * dU[i];
      v[i] += ap * dV[i];
      su[i] += ad * dSu[i];
      sv[i] += ad * dSv[i];
      lambda[i] += ad * dL[i];
    }
    for (int j = 0; j < r; ++j) x[j] += ap * dX[j];
  }

  Vector e = y - a * x;
  rep.solution = x;
  rep.objective = 0.0;
  for (int i = 0; i < n; ++i) rep.objective += w[i] * std::fabs(e[i]);
  {
    Vector rp(n);
    Vector ax = a * x;
    for (int i = 0; i < n; ++i) rp[i] = y[i] - ax[i] - u[i] + v[i];
    rep.primal_residual = norm2(rp);
  }
  rep.duality_gap = dot(u, su) + dot(v, sv);
  if (rep.status == SolveStatus::Optimal) {
    double scale = std::max(1.0, norm_inf(e));
    for (int i = 0; i < n; ++i) {
      double wscale = kDegeneracyTol * std::max(1.0, w[i]);
      if (std::fabs(e[i]) <= kDegeneracyTol * scale &&
          (su[i] <= wscale || sv[i] <= wscale)) {
        rep.status = SolveStatus::Degenerate;
        break;
      }
    }
  }
  if (x_out) *x_out = x;
  return rep;
}

bool has_orthonormal_rows(const Matrix& f) {
  const int m = f.rows();
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double s = 0.0;
      for (int k = 0; k < f.cols(); ++k) s += f(i, k) * f(j, k);
      if (std::fabs(s - (i == j ? 1.0 : 0.0)) > 1e-8) return false;
    }
  return true;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max-iterations";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

SolveReport solve_bp(const Matrix& f, const Vector& b, const SolverConfig& cfg) {
  if (f.rows() < 1 || f.cols() <= f.rows())
    throw std::invalid_argument("solve_bp needs a wide constraint matrix");
  if (static_cast<int>(b.size()) != f.rows())
    throw DimensionMismatch("solve_bp right-hand side length");
  require_finite(b, "solve_bp right-hand side");

  Vector e_ls;
  if (has_orthonormal_rows(f)) {
    e_ls = f.transposed() * b;
  } else {
    SvdResult s = svd(f);
    e_ls = pseudo_inverse_apply(s, b);
    double resid = norm2(f * e_ls - b);
    if (resid > cfg.feas_tol * std::max(1.0, norm2(b))) {
      SolveReport rep;
      rep.solution = e_ls;
      rep.objective = norm1(e_ls);
      rep.primal_residual = resid;
      rep.duality_gap = 0.0;
      rep.status = SolveStatus::Infeasible;
      return rep;
    }
  }
  return bp_ipm(f, b, e_ls, cfg);
}

SolveReport solve_lad(const Matrix& a, const Vector& y, const SolverConfig& cfg) {
  if (a.cols() < 1 || a.rows() < a.cols())
    throw std::invalid_argument("solve_lad needs a tall matrix");
  if (static_cast<int>(y.size()) != a.rows())
    throw DimensionMismatch("solve_lad observation length");
  require_finite(y, "solve_lad observations");
  SvdResult s = svd(a);
  if (numerical_rank(s, a.rows(), a.cols()) < a.cols())
    throw std::invalid_argument("solve_lad needs full column rank");
  Vector x0 = pseudo_inverse_apply(s, y);
  Vector w(a.rows(), 1.0);
  return lad_ipm(a, y, w, x0, cfg, nullptr);
}

SolveReport solve_reweighted_l1(const Matrix& a, const Vector& y,
                                const SolverConfig& cfg) {
  if (a.cols() < 1 || a.rows() < a.cols())
    throw std::invalid_argument("solve_reweighted_l1 needs a tall matrix");
  if (static_cast<int>(y.size()) != a.rows())
    throw DimensionMismatch("solve_reweighted_l1 observation length");
  require_finite(y, "solve_reweighted_l1 observations");
  SvdResult s = svd(a);
  if (numerical_rank(s, a.rows(), a.cols()) < a.cols())
    throw std::invalid_argument("solve_reweighted_l1 needs full column rank");

  const int n = a.rows();
  Vector x = pseudo_inverse_apply(s, y);
  Vector w(n, 1.0);
  SolveReport rep;
  for (int round = 0; round < std::max(1, cfg.reweight_rounds); ++round) {
    rep = lad_ipm(a, y, w, x, cfg, &x);
    Vector e = y - a * x;
    for (int i = 0; i < n; ++i) w[i] = 1.0 / (std::fabs(e[i]) + cfg.reweight_delta);
  }
  rep.solution = x;
  rep.objective = norm1(y - a * x);
  return rep;
}

namespace {

// Exact Euclidean projection onto {e : ||f e - b||_2 <= sigma}. For
// orthonormal rows this is a closed form; otherwise the radial multiplier
// solves a one-dimensional secular equation via guarded Newton.
class BallProjector {
 public:
  BallProjector(const Matrix& f, Vector b, double sigma)
      : f_(f), ft_(f.transposed()), b_(std::move(b)), sigma_(sigma) {
    ortho_rows_ = has_orthonormal_rows(f_);
    if (!ortho_rows_) s_ = svd(f_);
  }

  // Least-squares anchor and the unreachable part of b.
  Vector least_squares() const {
    return ortho_rows_ ? ft_ * b_ : pseudo_inverse_apply(s_, b_);
  }
  double min_residual() const {
    if (ortho_rows_) return 0.0;
    Vector ls = pseudo_inverse_apply(s_, b_);
    return norm2(f_ * ls - b_);
  }

  Vector project(const Vector& p) const {
    Vector g = f_ * p - b_;
    double gn = norm2(g);
    if (gn <= sigma_) return p;

    if (ortho_rows_) {
      double shrink = 1.0 - sigma_ / gn;
      Vector step = ft_ * g;
      Vector e = p;
      for (size_t i = 0; i < e.size(); ++i) e[i] -= shrink * step[i];
      return e;
    }

    // Components of g in the left singular basis.
    const int m = f_.rows();
    Vector gt(m);
    for (int j = 0; j < m; ++j) gt[j] = dot(s_.u.col(j), g);
    double floor2 = 0.0;  // part no multiplier can remove
    for (int j = 0; j < m; ++j) {
      double sig = j < static_cast<int>(s_.singular_values.size())
                       ? s_.singular_values[j]
                       : 0.0;
      if (sig == 0.0) floor2 += gt[j] * gt[j];
    }
    if (sigma_ * sigma_ <= floor2 + 1e-26 * (1.0 + gn * gn)) {
      // Ball degenerates to the affine set of least-squares residuals.
      Vector corr = pseudo_inverse_apply(s_, g);
      Vector e = p;
      for (size_t i = 0; i < e.size(); ++i) e[i] -= corr[i];
      return e;
    }

    double nu = 0.0;
    for (int it = 0; it < 200; ++it) {
      double phi = 0.0, dphi = 0.0;
      for (int j = 0; j < m; ++j) {
        double sig2 = 0.0;
        if (j < static_cast<int>(s_.singular_values.size()))
          sig2 = s_.singular_values[j] * s_.singular_values[j];
        double den = 1.0 + nu * sig2;
        double term = gt[j] / den;
        phi += term * term;
        dphi += -2.0 * sig2 * term * term / den;
      }
      double diff = phi - sigma_ * sigma_;
      if (std::fabs(diff) <= 1e-14 * sigma_ * sigma_ + 1e-300) break;
      if (dphi >= 0.0) break;
      nu += diff / (-dphi);
    }
    // w = (I + nu f f')^{-1} g, then e = p - nu f' w.
    Vector wv(m, 0.0);
    for (int j = 0; j < m; ++j) {
      double sig2 = 0.0;
      if (j < static_cast<int>(s_.singular_values.size()))
        sig2 = s_.singular_values[j] * s_.singular_values[j];
      double coef = gt[j] / (1.0 + nu * sig2);
      for (int i = 0; i < m; ++i) wv[i] += coef * s_.u(i, j);
    }
    Vector step = ft_ * wv;
    Vector e = p;
    for (size_t i = 0; i < e.size(); ++i) e[i] -= nu * step[i];
    return e;
  }

 private:
  const Matrix& f_;
  Matrix ft_;
  Vector b_;
  double sigma_;
  bool ortho_rows_ = false;
  SvdResult s_;
};

}  // namespace

SolveReport solve_bpdn(const Matrix& f, const Vector& b, double sigma,
                       const SolverConfig& cfg) {
  if (f.rows() < 1 || f.cols() <= f.rows())
    throw std::invalid_argument("solve_bpdn needs a wide constraint matrix");
  if (static_cast<int>(b.size()) != f.rows())
    throw DimensionMismatch("solve_bpdn right-hand side length");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("solve_bpdn needs sigma >= 0");
  require_finite(b, "solve_bpdn right-hand side");

  const int n = f.cols();
  BallProjector ball(f, b, sigma);
  double minres = ball.min_residual();
  if (minres > sigma + std::max(cfg.feas_tol, 1e-12) * (1.0 + norm2(b))) {
    SolveReport rep;
    rep.solution = ball.least_squares();
    rep.objective = norm1(rep.solution);
    rep.primal_residual = minres - sigma;
    rep.duality_gap = 0.0;
    rep.status = SolveStatus::Infeasible;
    return rep;
  }
  if (sigma >= norm2(b)) {
    SolveReport rep;
    rep.solution = Vector(n, 0.0);
    rep.objective = 0.0;
    rep.primal_residual = 0.0;
    rep.duality_gap = 0.0;
    rep.status = SolveStatus::Optimal;
    return rep;
  }

  // Splitting: e carries the ball constraint, z the l1 term, uu the scaled
  // multiplier for e = z.
  Vector z = ball.least_squares();
  Vector uu(n, 0.0), e(n, 0.0);
  double rho = 1.0;
  const double tol_abs = std::min({1e-10, 0.01 * cfg.gap_tol, 0.01 * cfg.feas_tol});
  const double tol_rel = tol_abs;
  const long max_iter = static_cast<long>(cfg.max_iter) * 250;
  double prim_r = 0.0, dual_r = 0.0;

  SolveReport rep;
  rep.status = SolveStatus::MaxIter;
  for (long it = 0; it < max_iter; ++it) {
    Vector p(n);
    for (int i = 0; i < n; ++i) p[i] = z[i] - uu[i];
    e = ball.project(p);
    Vector zq(n);
    for (int i = 0; i < n; ++i) zq[i] = e[i] + uu[i];
    Vector z_new = soft_threshold(zq, 1.0 / rho);
    dual_r = 0.0;
    prim_r = 0.0;
    for (int i = 0; i < n; ++i) {
      double dz = z_new[i] - z[i];
      dual_r += dz * dz;
      double pr = e[i] - z_new[i];
      prim_r += pr * pr;
      uu[i] += pr;
    }
    dual_r = rho * std::sqrt(dual_r);
    prim_r = std::sqrt(prim_r);
    z = std::move(z_new);
    double scale_p = std::max(norm2(e), norm2(z));
    double scale_d = rho * norm2(uu);
    if (prim_r <= tol_abs * std::sqrt(n) + tol_rel * scale_p &&
        dual_r <= tol_abs * std::sqrt(n) + tol_rel * scale_d) {
      rep.status = SolveStatus::Optimal;
      break;
    }
    if (it % 50 == 49) {
      if (prim_r > 10.0 * dual_r) {
        rho *= 2.0;
        for (double& c : uu) c *= 0.5;
      } else if (dual_r > 10.0 * prim_r) {
        rho *= 0.5;
        for (double& c : uu) c *= 2.0;
      }
    }
  }

  rep.solution = e;
  rep.objective = norm1(e);
  rep.primal_residual = std::max(0.0, norm2(f * e - b) - sigma);
  rep.duality_gap = prim_r + dual_r;  // convergence surrogate; no LP dual here
  if (rep.status == SolveStatus::Optimal) {
    double scale = std::max(1.0, norm_inf(z));
    for (int i = 0; i < n; ++i) {
      if (std::fabs(z[i]) <= kDegeneracyTol * scale &&
          std::fabs(rho * uu[i]) >= 1.0 - kDegeneracyTol) {
        rep.status = SolveStatus::Degenerate;
        break;
      }
    }
  }
  return rep;
}

Vector soft_threshold(const Vector& v, double eps) {
  Vector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    double mag = std::fabs(v[i]) - eps;
    out[i] = mag > 0.0 ? (v[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

}  // namespace sitl1
