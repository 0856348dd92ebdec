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
//
// Sparse additive error detection in an over-determined system y = a x + e.
// The observation space splits into range(a), the one extra direction the
// observations lean out of it, and the orthogonal complement of both. Any
// candidate unit vector inside the leaning plane defines an equality
// constrained l1 problem whose solution, soft-thresholded and rescaled,
// proposes an error support. A Monte Carlo search over candidates keeps the
// proposal with the fewest nonzeros.

#ifndef SITL1_SIT_HPP_
#define SITL1_SIT_HPP_

#include <cstdint>
#include <vector>

#include "sitl1/l1solve.hpp"
#include "sitl1/matrix.hpp"
#include "sitl1/rng.hpp"

namespace sitl1 {

struct Problem {
  Matrix a;  // n x r, full column rank, n > r
  Vector y;  // length n
};

// Throws std::invalid_argument on shape or rank violations.
void check_problem(const Problem& p);

struct OrthoFrame {
  Matrix range_basis;       // n x r orthobasis of range(a)
  Vector mismatch_dir;      // unit vector toward y outside range(a)
  Matrix complement_basis;  // n x (n-r-1), orthogonal to range(a) and y
  double mismatch = 0.0;    // mismatch_dir . y
};

struct Candidate {
  Vector direction;  // unit vector in span([range_basis | mismatch_dir])
  int index = 0;     // 0 is the deterministic candidate, samples count from 1
};

struct Detection {
  Vector raw;      // soft-thresholded solver output, transformed scale
  Vector scaled;   // raw rescaled back to observation magnitudes
  std::vector<int> support;  // zero-based indices of nonzeros of raw
  int l0 = 0;
  double scale = 0.0;  // multiplier taking raw to scaled
  Vector coeffs;       // recovered regression coefficients
  Candidate candidate;
  SolveReport report;
};

// Orthonormal split of the observation space. Throws DegenerateY when y lies
// in range(a) within 1e-10 relative; callers handle that as a zero-error fit.
OrthoFrame build_frame(const Problem& p);

// Direction [range_basis | mismatch_dir] * (coeffs / ||coeffs||).
Candidate candidate_from_coeffs(const OrthoFrame& frame, const Vector& coeffs,
                                int index);

// Standard normal coefficients, normalized. Deterministic given the rng state.
Candidate draw_candidate(const OrthoFrame& frame, Rng& rng, int index);

// One l1 solve against the candidate: min ||e||_1 subject to the candidate
// row picking up the full mismatch and the complement rows picking up zero
// (relaxed to an l2 ball of radius sigma when sigma > 0). Throws
// DegenerateSample when thresholding kills the mismatch component and the
// rescale is undefined.
Detection detect_once(const Problem& p, const OrthoFrame& frame,
                      const Candidate& cand, double eps,
                      const SolverConfig& cfg = {}, double sigma = 0.0);

// All candidate evaluations for one frame: index 0 is the deterministic
// candidate (direction = mismatch_dir), indices 1..snbr draw from the
// substream Rng(seed, index). Degenerate samples are dropped from the result.
std::vector<Detection> detect_samples(const Problem& p, const OrthoFrame& frame,
                                      int snbr, double eps, std::uint64_t seed,
                                      const SolverConfig& cfg = {},
                                      double sigma = 0.0);

// Fewest nonzeros wins; ties go to smaller ||raw||_1, then smaller candidate
// index. Throws AllSamplesDegenerate on an empty list.
Detection reduce_detections(const std::vector<Detection>& dets);

// Full randomized search. Consistent observations (DegenerateY) short-circuit
// to the zero-error least-squares fit without sampling.
Detection detect(const Problem& p, int snbr, double eps, std::uint64_t seed,
                 const SolverConfig& cfg = {}, double sigma = 0.0);

// Least-squares coefficients from the rows outside the support. Throws
// RankDeficientComplement when those rows drop rank.
Vector recover_coeffs(const Problem& p, const std::vector<int>& support);

// Explicit orthogonal map sending mismatch_dir to the candidate direction,
// fixing the complement pointwise and preserving the leaning plane. With the
// deterministic candidate this is the identity.
Matrix build_rotation(const OrthoFrame& frame, const Candidate& cand);

// Image of f's rows under the rotation, without forming it: column j of the
// result is d_j * direction + f_row_j - d_j * mismatch_dir with d = f *
// mismatch_dir. Rows of f must be orthogonal to range_basis.
Matrix transformed_constraints(const OrthoFrame& frame, const Candidate& cand,
                               const Matrix& f);

// Sparsest solution of the under-determined system f e = y_tilde (f wide,
// full row rank): anchor at the least-squares solution, search over the
// kernel. Throws InfeasibleInput when y_tilde is outside range(f).
Detection recover_underdetermined(const Matrix& f, const Vector& y_tilde,
                                  int snbr, double eps, std::uint64_t seed,
                                  const SolverConfig& cfg = {});

struct InvarianceReport {
  bool invertible = false;
  bool fixes_complement = false;
  bool orthogonal = false;
  double fix_error = 0.0;    // max |phi c - c| over complement basis vectors
  double ortho_error = 0.0;  // max |phi' phi - identity|
  int min_l0_before = -1;
  int min_l0_after = -1;
  bool counts_equal = false;
  bool supports_equal = false;
  bool passed = false;
};

// Brute-force check that phi preserves the sparsest error structure: same
// minimal nonzero count and the same set of optimal supports before and
// after transforming (a, y). Enumeration-capped; throws OracleTooLarge.
InvarianceReport verify_invariance(const Matrix& phi, const Problem& p,
                                   long cap = 2000000, double tol = 1e-6);

}  // namespace sitl1

#endif  // SITL1_SIT_HPP_
