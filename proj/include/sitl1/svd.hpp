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

#ifndef SITL1_SVD_HPP_
#define SITL1_SVD_HPP_

#include "sitl1/matrix.hpp"

namespace sitl1 {

// Full decomposition m = u * diag(singular_values) * v^T with u (rows x rows)
// and v (cols x cols) orthogonal and singular_values sorted nonincreasing,
// length min(rows, cols).
struct SvdResult {
  Matrix u;
  Vector singular_values;
  Matrix v;
};

// One-sided Jacobi on the taller orientation. Accurate and simple at the
// problem sizes this library targets (a few hundred rows).
SvdResult svd(const Matrix& m);

// Rank cutoff: max(rows, cols) * machine epsilon * largest singular value.
double rank_tolerance(const SvdResult& s, int rows, int cols);

int numerical_rank(const SvdResult& s, int rows, int cols);

// Orthonormal basis of the column span, one column per numerical rank.
Matrix orthobasis_range(const Matrix& m);

// Orthonormal basis of the orthogonal complement of the column span.
// Throws FullRank when the columns already span the whole space.
Matrix orthobasis_complement(const Matrix& m);

// Minimum-norm least-squares solution of m x = b.
Vector pseudo_inverse_apply(const Matrix& m, const Vector& b);
Vector pseudo_inverse_apply(const SvdResult& s, const Vector& b);

// In-place lower-triangular Cholesky of a symmetric positive definite
// matrix; returns false when a pivot drops below zero (not SPD).
bool cholesky_factor(Matrix& m);
Vector cholesky_solve(const Matrix& lower, Vector b);

}  // namespace sitl1

#endif  // SITL1_SVD_HPP_
