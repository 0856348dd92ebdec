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

#ifndef SITL1_L1SOLVE_HPP_
#define SITL1_L1SOLVE_HPP_

#include "sitl1/matrix.hpp"

namespace sitl1 {

enum class SolveStatus {
  Optimal,
  MaxIter,
  Infeasible,
  // Converged, but the optimum is not unique (a tie was detected through a
  // strict-complementarity failure). The returned point is one optimum.
  Degenerate,
};

const char* to_string(SolveStatus s);

struct SolverConfig {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iter = 200;
  // reweighted l1 only
  double reweight_delta = 1e-3;
  int reweight_rounds = 4;
};

struct SolveReport {
  Vector solution;
  double objective = 0.0;       // l1 norm recomputed from the solution
  double primal_residual = 0.0;
  double duality_gap = 0.0;
  SolveStatus status = SolveStatus::Optimal;
};

// min ||e||_1  s.t.  f e = b, with f wide (more columns than rows).
//
// Solved as the split LP  min 1'(u+v) s.t. f(u-v)=b, u,v>=0  by a
// Mehrotra-style primal-dual interior-point method. The start point is
// primal and dual feasible, so the reported duality gap is the true
// complementarity gap and certifies optimality.
SolveReport solve_bp(const Matrix& f, const Vector& b, const SolverConfig& cfg = {});

// min ||y - a x||_1 over x, with a full column rank.
//
// Same interior-point engine on  min 1'(u+v) s.t. a x + u - v = y  with x
// free; the normal equations reduce to an r x r solve per step.
SolveReport solve_lad(const Matrix& a, const Vector& y, const SolverConfig& cfg = {});

// min ||e||_1  s.t.  ||f e - b||_2 <= sigma.
//
// First-order splitting: alternate an exact projection onto the residual
// ball with soft thresholding. Runs its own path even at sigma = 0 so it can
// be cross-checked against solve_bp.
SolveReport solve_bpdn(const Matrix& f, const Vector& b, double sigma,
                       const SolverConfig& cfg = {});

// Iteratively reweighted l1: rounds of weighted LAD with weights
// 1/(|residual| + reweight_delta). Returns the final x.
SolveReport solve_reweighted_l1(const Matrix& a, const Vector& y,
                                const SolverConfig& cfg = {});

// sign(v) .* max(|v| - eps, 0)
Vector soft_threshold(const Vector& v, double eps);

}  // namespace sitl1

#endif  // SITL1_L1SOLVE_HPP_
