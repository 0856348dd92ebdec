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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sitl1/errors.hpp"
#include "sitl1/l1solve.hpp"
#include "sitl1/matrix.hpp"
#include "sitl1/rng.hpp"
#include "sitl1/sit.hpp"
#include "sitl1/svd.hpp"

using namespace sitl1;

namespace {

// Over-determined 3x1 system with a single gross error in the last row.
Problem worked_example() {
  return Problem{Matrix::column({-1.0, 1.0, -10.0}), Vector{-1.0, 1.0, 0.0}};
}

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Problem planted_problem(int n, int r, int s, double magnitude, Rng& rng,
                        std::vector<int>* support_out = nullptr) {
  Matrix a = random_matrix(n, r, rng);
  Vector x0 = rng.normal_vector(r);
  Vector y = a * x0;
  std::vector<int> support = rng.sample_indices(s, n);
  for (int i : support) y[i] += magnitude;
  if (support_out) *support_out = support;
  return Problem{a, y};
}

double max_diff(const Vector& a, const Vector& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double frame_defect(const OrthoFrame& f) {
  Matrix all = hcat(hcat(f.range_basis, Matrix::column(f.mismatch_dir)),
                    f.complement_basis);
  Matrix gram = all.transposed() * all;
  double worst = 0.0;
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST_CASE("frame of the worked example") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  double root51 = std::sqrt(51.0);
  // Mismatch direction is fixed by construction, no sign ambiguity.
  CHECK(f.mismatch_dir[0] == doctest::Approx(-5.0 / root51).epsilon(1e-12));
  CHECK(f.mismatch_dir[1] == doctest::Approx(5.0 / root51).epsilon(1e-12));
  CHECK(f.mismatch_dir[2] == doctest::Approx(1.0 / root51).epsilon(1e-12));
  CHECK(f.mismatch == doctest::Approx(10.0 / root51).epsilon(1e-12));
  REQUIRE(f.complement_basis.cols() == 1);
  double root_half = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(f.complement_basis(0, 0)) - root_half) <= 1e-10);
  CHECK(std::abs(std::abs(f.complement_basis(1, 0)) - root_half) <= 1e-10);
  CHECK(std::abs(f.complement_basis(2, 0)) <= 1e-10);
  CHECK(frame_defect(f) <= 1e-9);
  // The complement never sees y.
  Vector cy = f.complement_basis.transposed() * p.y;
  CHECK(norm_inf(cy) <= 1e-9 * norm_inf(p.y));
}

TEST_CASE("frame invariants on random problems") {
  Rng rng(1001);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 5 + static_cast<int>(rng.below(8));
    int r = 1 + static_cast<int>(rng.below(3));
    Problem p = planted_problem(n, r, 2, 10.0, rng);
    OrthoFrame f = build_frame(p);
    CHECK(f.range_basis.cols() == r);
    CHECK(f.complement_basis.cols() == n - r - 1);
    CHECK(frame_defect(f) <= 1e-9);
    CHECK(f.mismatch > 0.0);
    Vector cy = f.complement_basis.transposed() * p.y;
    CHECK(norm_inf(cy) <= 1e-8 * std::max(1.0, norm_inf(p.y)));
  }
}

TEST_CASE("consistent observations degenerate the frame") {
  Rng rng(1002);
  Matrix a = random_matrix(6, 2, rng);
  Vector x0{1.0, -2.0};
  Problem p{a, a * x0};
  CHECK_THROWS_AS(build_frame(p), DegenerateY);

  // The search treats that case as a clean zero-error fit.
  Detection det = detect(p, 10, 0.1, 1);
  CHECK(det.l0 == 0);
  CHECK(det.support.empty());
  CHECK(norm_inf(det.scaled) == 0.0);
  CHECK(max_diff(det.coeffs, x0) <= 1e-8);
}

TEST_CASE("candidate construction") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  Candidate direct = candidate_from_coeffs(f, Vector{0.0, 1.0}, 0);
  CHECK(max_diff(direct.direction, f.mismatch_dir) <= 1e-12);

  Candidate mixed = candidate_from_coeffs(f, Vector{3.0, 4.0}, 2);
  CHECK(norm2(mixed.direction) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed.index == 2);

  Rng rng_a(7, 3);
  Rng rng_b(7, 3);
  Candidate ca = draw_candidate(f, rng_a, 1);
  Candidate cb = draw_candidate(f, rng_b, 1);
  CHECK(max_diff(ca.direction, cb.direction) == 0.0);
  CHECK(norm2(ca.direction) == doctest::Approx(1.0).epsilon(1e-10));
  Vector cross = f.complement_basis.transposed() * ca.direction;
  CHECK(norm_inf(cross) <= 1e-9);
}

TEST_CASE("single detection with a separating candidate") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  // The pure range direction satisfies the separation condition here.
  Candidate cand = candidate_from_coeffs(f, Vector{1.0, 0.0}, 5);
  Detection det = detect_once(p, f, cand, 0.1);
  CHECK(det.support == std::vector<int>{2});
  CHECK(det.l0 == 1);
  // One-sparse rescale is exact: the shrinkage cancels.
  CHECK(std::abs(det.scaled[0]) <= 1e-9);
  CHECK(std::abs(det.scaled[1]) <= 1e-9);
  CHECK(det.scaled[2] == doctest::Approx(10.0).epsilon(1e-9));
  REQUIRE(det.coeffs.size() == 1);
  CHECK(det.coeffs[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("direct candidate reproduces the l1 regression support") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  Candidate direct{f.mismatch_dir, 0};
  Detection det = detect_once(p, f, direct, 0.1);
  CHECK(det.support == std::vector<int>{0, 1});
  CHECK(det.l0 == 2);

  SolveReport lad = solve_lad(p.a, p.y);
  Vector resid = p.y - p.a * lad.solution;
  std::vector<int> lad_support;
  for (size_t i = 0; i < resid.size(); ++i)
    if (std::abs(resid[i]) > 0.1) lad_support.push_back(static_cast<int>(i));
  CHECK(det.support == lad_support);
}

TEST_CASE("over-thresholding degenerates the sample") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  Candidate direct{f.mismatch_dir, 0};
  CHECK_THROWS_AS(detect_once(p, f, direct, 100.0), DegenerateSample);
}

TEST_CASE("sample list always contains the deterministic candidate") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  std::vector<Detection> dets = detect_samples(p, f, 0, 0.1, 1);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].candidate.index == 0);
  CHECK(dets[0].support == std::vector<int>{0, 1});
}

TEST_CASE("search on the worked example finds the single error") {
  Problem p = worked_example();
  Detection det = detect(p, 50, 0.1, 1);
  CHECK(det.l0 == 1);
  CHECK(det.support == std::vector<int>{2});
  CHECK(std::abs(det.scaled[0]) <= 1e-3);
  CHECK(std::abs(det.scaled[1]) <= 1e-3);
  CHECK(det.scaled[2] == doctest::Approx(10.0).epsilon(1e-3));
  REQUIRE(det.coeffs.size() == 1);
  CHECK(det.coeffs[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("more samples never hurt") {
  Rng rng(2024);
  Problem p = planted_problem(12, 2, 2, 10.0, rng);
  int prev = 1 << 20;
  for (int snbr : {5, 20, 80}) {
    Detection det = detect(p, snbr, 0.2, 9);
    CHECK(det.l0 <= prev);
    prev = det.l0;
  }
}

TEST_CASE("rescaled residual returns to the column span") {
  Rng rng(2025);
  for (int trial = 0; trial < 6; ++trial) {
    Problem p = planted_problem(10, 2, 2, 10.0, rng);
    OrthoFrame f = build_frame(p);
    Detection det = detect(p, 40, 0.2, 31 + trial);
    double denom = dot(f.mismatch_dir, det.report.solution);
    REQUIRE(std::abs(denom) > 1e-12);
    double lam = f.mismatch / denom;
    Vector back = p.y - lam * det.report.solution;
    Vector hidden = f.complement_basis.transposed() * back;
    CHECK(norm_inf(hidden) <= 1e-6 * std::max(1.0, norm_inf(p.y)));
    CHECK(std::abs(dot(f.mismatch_dir, back)) <=
          1e-6 * std::max(1.0, norm_inf(p.y)));
  }
}

TEST_CASE("coefficient recovery") {
  Problem p = worked_example();
  Vector x = recover_coeffs(p, {2});
  REQUIRE(x.size() == 1);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(2026);
  Matrix a = random_matrix(6, 2, rng);
  Vector x0{2.0, -1.0};
  Problem q{a, a * x0};
  CHECK(max_diff(recover_coeffs(q, {}), x0) <= 1e-9);

  CHECK_THROWS_AS(recover_coeffs(p, std::vector<int>{0, 1, 2}),
                  RankDeficientComplement);
}

TEST_CASE("rotation with the deterministic candidate is the identity") {
  Problem p = worked_example();
  OrthoFrame f = build_frame(p);
  Matrix phi = build_rotation(f, Candidate{f.mismatch_dir, 0});
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(phi(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-9);
}

TEST_CASE("rotation properties on random problems") {
  Rng rng(2027);
  for (int trial = 0; trial < 5; ++trial) {
    Problem p = planted_problem(8, 2, 1, 10.0, rng);
    OrthoFrame f = build_frame(p);
    Rng draw(90 + trial, 1);
    Candidate cand = draw_candidate(f, draw, 1);
    Matrix phi = build_rotation(f, cand);

    Matrix gram = phi.transposed() * phi;
    double ortho = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        ortho = std::max(ortho, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(ortho <= 1e-9);

    CHECK(max_diff(phi * f.mismatch_dir, cand.direction) <= 1e-9);
    for (int j = 0; j < f.complement_basis.cols(); ++j) {
      Vector c = f.complement_basis.col(j);
      CHECK(max_diff(phi * c, c) <= 1e-9);
    }
    // The leaning plane maps into itself.
    for (int j = 0; j < f.range_basis.cols(); ++j) {
      Vector image = phi * f.range_basis.col(j);
      Vector outside = f.complement_basis.transposed() * image;
      CHECK(norm_inf(outside) <= 1e-9);
    }
  }
}

TEST_CASE("transformed constraints match the explicit rotation") {
  Rng rng(2028);
  Problem p = planted_problem(9, 2, 1, 10.0, rng);
  OrthoFrame f = build_frame(p);
  Rng draw(17, 1);
  Candidate cand = draw_candidate(f, draw, 1);

  int mc = f.complement_basis.cols();
  Matrix rows(mc + 1, 9);
  for (int j = 0; j < 9; ++j) rows(0, j) = f.mismatch_dir[j];
  for (int i = 0; i < mc; ++i)
    for (int j = 0; j < 9; ++j) rows(i + 1, j) = f.complement_basis(j, i);

  Matrix out = transformed_constraints(f, cand, rows);
  REQUIRE(out.rows() == 9);
  REQUIRE(out.cols() == mc + 1);
  // First row carries the full mismatch, so it lands on the candidate; the
  // complement rows stay put.
  CHECK(max_diff(out.col(0), cand.direction) <= 1e-9);
  for (int i = 0; i < mc; ++i)
    CHECK(max_diff(out.col(i + 1), f.complement_basis.col(i)) <= 1e-9);

  Matrix phi = build_rotation(f, cand);
  Matrix expected = phi * rows.transposed();
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < mc + 1; ++j)
      worst = std::max(worst, std::abs(out(i, j) - expected(i, j)));
  CHECK(worst <= 1e-8);

  Matrix bad(1, 9);
  for (int j = 0; j < 9; ++j) bad(0, j) = f.range_basis(j, 0);
  CHECK_THROWS_AS(transformed_constraints(f, cand, bad), std::invalid_argument);
}

TEST_CASE("under-determined recovery on a split identity") {
  Matrix f(2, 5, {1, 0, 0, 0, 0, 0, 1, 0, 0, 0});
  Detection det = recover_underdetermined(f, Vector{3.0, -4.0}, 30, 0.1, 1);
  CHECK(det.support == std::vector<int>{0, 1});
  CHECK(det.scaled[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(det.scaled[1] == doctest::Approx(-4.0).epsilon(1e-6));
  for (int i = 2; i < 5; ++i) CHECK(std::abs(det.scaled[i]) <= 1e-6);
}

TEST_CASE("under-determined recovery of a planted spike") {
  Rng rng(2030);
  Matrix f = random_matrix(4, 10, rng);
  Vector e0(10, 0.0);
  e0[7] = 5.0;
  Detection det = recover_underdetermined(f, f * e0, 200, 0.1, 3);
  CHECK(det.support == std::vector<int>{7});
  CHECK(det.scaled[7] == doctest::Approx(5.0).epsilon(1e-4));

  Matrix deficient(2, 4, {1, 0, 0, 0, 1, 0, 0, 0});
  CHECK_THROWS_AS(
      recover_underdetermined(deficient, Vector{1.0, 1.0}, 10, 0.1, 1),
      std::invalid_argument);
}

TEST_CASE("invariance report for the identity map") {
  Problem p = worked_example();
  InvarianceReport rep = verify_invariance(Matrix::identity(3), p);
  CHECK(rep.invertible);
  CHECK(rep.fixes_complement);
  CHECK(rep.orthogonal);
  CHECK(rep.min_l0_before == 1);
  CHECK(rep.min_l0_after == 1);
  CHECK(rep.counts_equal);
  CHECK(rep.supports_equal);
  CHECK(rep.passed);
}

TEST_CASE("invariance report for built rotations") {
  Rng rng(2031);
  for (int trial = 0; trial < 4; ++trial) {
    Problem p = planted_problem(7, 2, 1, 10.0, rng);
    OrthoFrame f = build_frame(p);
    Rng draw(300 + trial, 1);
    Candidate cand = draw_candidate(f, draw, 1);
    Matrix phi = build_rotation(f, cand);
    InvarianceReport rep = verify_invariance(phi, p);
    CHECK(rep.passed);
    CHECK(rep.counts_equal);
    CHECK(rep.supports_equal);
  }
}

TEST_CASE("scaled maps fail the invariance check") {
  Problem p = worked_example();
  Matrix two = Matrix::identity(3);
  for (int i = 0; i < 3; ++i) two(i, i) = 2.0;
  InvarianceReport rep = verify_invariance(two, p);
  CHECK_FALSE(rep.orthogonal);
  CHECK_FALSE(rep.passed);
}
