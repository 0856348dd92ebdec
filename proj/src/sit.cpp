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

#include "sitl1/sit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "sitl1/errors.hpp"
#include "sitl1/oracle.hpp"
#include "sitl1/parallel.hpp"
#include "sitl1/svd.hpp"

namespace sitl1 {

namespace {

constexpr double kDegenerateYTol = 1e-10;
constexpr double kRescaleCutoff = 1e-10;

void check_shapes(const Problem& p) {
  if (p.a.cols() < 1 || p.a.rows() <= p.a.cols())
    throw std::invalid_argument("problem needs more observations than coefficients");
  if (static_cast<int>(p.y.size()) != p.a.rows())
    throw DimensionMismatch("observation length does not match the matrix");
  require_finite(p.y, "observations");
}

Detection zero_detection(const Problem& p) {
  const int n = p.a.rows();
  Detection det;
  det.raw = Vector(n, 0.0);
  det.scaled = Vector(n, 0.0);
  det.l0 = 0;
  det.scale = 0.0;
  det.coeffs = pseudo_inverse_apply(p.a, p.y);
  det.report.solution = det.raw;
  det.report.objective = 0.0;
  det.report.primal_residual = 0.0;
  det.report.duality_gap = 0.0;
  det.report.status = SolveStatus::Optimal;
  return det;
}

}  // namespace

void check_problem(const Problem& p) {
  check_shapes(p);
  SvdResult s = svd(p.a);
  if (numerical_rank(s, p.a.rows(), p.a.cols()) < p.a.cols())
    throw std::invalid_argument("matrix must have full column rank");
}

OrthoFrame build_frame(const Problem& p) {
  check_shapes(p);
  const int n = p.a.rows();
  const int r = p.a.cols();

  SvdResult s = svd(p.a);
  if (numerical_rank(s, n, r) < r)
    throw std::invalid_argument("matrix must have full column rank");

  OrthoFrame frame;
  frame.range_basis = s.u.col_range(0, r);

  Vector residual = p.y;
  for (int j = 0; j < r; ++j) {
    Vector uj = frame.range_basis.col(j);
    double c = dot(uj, residual);
    for (int i = 0; i < n; ++i) residual[i] -= c * uj[i];
  }
  double rn = norm2(residual);
  if (rn <= kDegenerateYTol * norm2(p.y))
    throw DegenerateY("observations lie in the range of the matrix");
  frame.mismatch_dir = (1.0 / rn) * residual;

  if (r + 1 == n) {
    frame.complement_basis = Matrix(n, 0);
  } else {
    Matrix plane(n, r + 1);
    for (int j = 0; j < r; ++j) plane.set_col(j, frame.range_basis.col(j));
    plane.set_col(r, frame.mismatch_dir);
    frame.complement_basis = orthobasis_complement(plane);
  }
  frame.mismatch = dot(frame.mismatch_dir, p.y);
  return frame;
}

Candidate candidate_from_coeffs(const OrthoFrame& frame, const Vector& coeffs,
                                int index) {
  const int r = frame.range_basis.cols();
  const int n = frame.range_basis.rows();
  if (static_cast<int>(coeffs.size()) != r + 1)
    throw DimensionMismatch("candidate coefficients need one entry per plane axis");
  double nrm = norm2(coeffs);
  if (nrm <= 0.0) throw std::invalid_argument("candidate coefficients are zero");

  Candidate cand;
  cand.index = index;
  cand.direction = Vector(n, 0.0);
  for (int j = 0; j < r; ++j) {
    double c = coeffs[j] / nrm;
    for (int i = 0; i < n; ++i) cand.direction[i] += c * frame.range_basis(i, j);
  }
  double c = coeffs[r] / nrm;
  for (int i = 0; i < n; ++i) cand.direction[i] += c * frame.mismatch_dir[i];
  return cand;
}

Candidate draw_candidate(const OrthoFrame& frame, Rng& rng, int index) {
  const int r = frame.range_basis.cols();
  Vector coeffs;
  do {
    coeffs = rng.normal_vector(r + 1);
  } while (norm2(coeffs) <= 1e-154);
  return candidate_from_coeffs(frame, coeffs, index);
}

Detection detect_once(const Problem& p, const OrthoFrame& frame,
                      const Candidate& cand, double eps,
                      const SolverConfig& cfg, double sigma) {
  const int n = p.a.rows();
  const int r = p.a.cols();
  if (eps < 0.0) throw std::invalid_argument("threshold must be nonnegative");
  if (frame.mismatch == 0.0)
    throw std::invalid_argument("frame has a zero mismatch component");
  if (static_cast<int>(cand.direction.size()) != n)
    throw DimensionMismatch("candidate direction length");

  const int mc = frame.complement_basis.cols();
  Matrix constraints(mc + 1, n);
  for (int j = 0; j < n; ++j) constraints(0, j) = cand.direction[j];
  for (int i = 0; i < mc; ++i)
    for (int j = 0; j < n; ++j) constraints(i + 1, j) = frame.complement_basis(j, i);
  Vector b(mc + 1, 0.0);
  b[0] = frame.mismatch;

  SolveReport report = sigma > 0.0 ? solve_bpdn(constraints, b, sigma, cfg)
                                   : solve_bp(constraints, b, cfg);
  if (report.status == SolveStatus::Infeasible)
    throw DegenerateSample("candidate constraint system is infeasible");

  Detection det;
  det.candidate = cand;
  det.report = report;
  det.raw = soft_threshold(report.solution, eps);
  for (int i = 0; i < n; ++i)
    if (det.raw[i] != 0.0) det.support.push_back(i);
  det.l0 = static_cast<int>(det.support.size());
  if (det.l0 == 0)
    throw DegenerateSample("thresholding removed every entry");

  double denom = dot(frame.mismatch_dir, det.raw);
  if (std::fabs(denom) <= kRescaleCutoff * norm2(det.raw))
    throw DegenerateSample("thresholded solution lost its mismatch component");
  det.scale = frame.mismatch / denom;
  det.scaled = det.scale * det.raw;
  for (double& e : det.scaled)
    if (e == 0.0) e = 0.0;  // flush negative zeros from the rescale

  if (n - det.l0 >= r) {
    try {
      det.coeffs = recover_coeffs(p, det.support);
    } catch (const RankDeficientComplement&) {
      det.coeffs = pseudo_inverse_apply(p.a, p.y - det.scaled);
    }
  } else {
    det.coeffs = pseudo_inverse_apply(p.a, p.y - det.scaled);
  }
  return det;
}

std::vector<Detection> detect_samples(const Problem& p, const OrthoFrame& frame,
                                      int snbr, double eps, std::uint64_t seed,
                                      const SolverConfig& cfg, double sigma) {
  if (snbr < 0) throw std::invalid_argument("snbr must be nonnegative");
  const int tasks = snbr + 1;
  std::vector<std::optional<Detection>> slots(tasks);
  parallel_for(tasks, [&](int i) {
    try {
      Candidate cand;
      if (i == 0) {
        cand.direction = frame.mismatch_dir;
        cand.index = 0;
      } else {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        cand = draw_candidate(frame, rng, i);
      }
      slots[i] = detect_once(p, frame, cand, eps, cfg, sigma);
    } catch (const DegenerateSample&) {
    } catch (const SolverFailure&) {
    }
  });
  std::vector<Detection> out;
  out.reserve(tasks);
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

Detection reduce_detections(const std::vector<Detection>& dets) {
  if (dets.empty())
    throw AllSamplesDegenerate("no candidate produced a usable detection");
  const Detection* best = &dets.front();
  double best_l1 = norm1(best->raw);
  for (size_t i = 1; i < dets.size(); ++i) {
    const Detection& d = dets[i];
    double l1 = norm1(d.raw);
    bool better = d.l0 < best->l0 ||
                  (d.l0 == best->l0 &&
                   (l1 < best_l1 ||
                    (l1 == best_l1 && d.candidate.index < best->candidate.index)));
    if (better) {
      best = &d;
      best_l1 = l1;
    }
  }
  return *best;
}

Detection detect(const Problem& p, int snbr, double eps, std::uint64_t seed,
                 const SolverConfig& cfg, double sigma) {
  if (snbr < 0) throw std::invalid_argument("snbr must be nonnegative");
  OrthoFrame frame;
  try {
    frame = build_frame(p);
  } catch (const DegenerateY&) {
    return zero_detection(p);
  }
  return reduce_detections(detect_samples(p, frame, snbr, eps, seed, cfg, sigma));
}

Vector recover_coeffs(const Problem& p, const std::vector<int>& support) {
  const int n = p.a.rows();
  const int r = p.a.cols();
  std::vector<char> flagged(n, 0);
  for (int i : support) {
    if (i < 0 || i >= n) throw std::invalid_argument("support index out of range");
    flagged[i] = 1;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!flagged[i]) keep.push_back(i);
  if (static_cast<int>(keep.size()) < r)
    throw RankDeficientComplement("too few rows outside the support");

  Matrix sub = p.a.rows_subset(keep);
  SvdResult s = svd(sub);
  if (numerical_rank(s, sub.rows(), sub.cols()) < r)
    throw RankDeficientComplement("rows outside the support drop rank");
  return pseudo_inverse_apply(s, gather(p.y, keep));
}

Matrix build_rotation(const OrthoFrame& frame, const Candidate& cand) {
  const int n = frame.range_basis.rows();
  const int r = frame.range_basis.cols();
  if (static_cast<int>(cand.direction.size()) != n)
    throw DimensionMismatch("candidate direction length");

  Matrix w(n, r + 1);
  w.set_col(0, frame.mismatch_dir);
  for (int j = 0; j < r; ++j) w.set_col(j + 1, frame.range_basis.col(j));

  // Orthonormal completion of the candidate inside the plane, seeded by the
  // plane's own axes in a fixed order so the deterministic candidate yields
  // the identity map.
  Matrix wp(n, r + 1);
  {
    double nrm = norm2(cand.direction);
    if (nrm <= 0.0) throw std::invalid_argument("candidate direction is zero");
    wp.set_col(0, (1.0 / nrm) * cand.direction);
  }
  int have = 1;
  std::vector<Vector> seeds;
  for (int j = 0; j < r; ++j) seeds.push_back(frame.range_basis.col(j));
  seeds.push_back(frame.mismatch_dir);
  for (const Vector& seed : seeds) {
    if (have == r + 1) break;
    Vector v = seed;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < have; ++j) {
        Vector wj = wp.col(j);
        double c = dot(wj, v);
        for (int i = 0; i < n; ++i) v[i] -= c * wj[i];
      }
    }
    double nrm = norm2(v);
    if (nrm > 1e-8) {
      wp.set_col(have, (1.0 / nrm) * v);
      ++have;
    }
  }
  if (have < r + 1)
    throw GramSchmidtBreakdown("could not complete the rotation basis");

  Matrix phi = wp * w.transposed();
  const Matrix& comp = frame.complement_basis;
  for (int k = 0; k < comp.cols(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) phi(i, j) += comp(i, k) * comp(j, k);
  return phi;
}

Matrix transformed_constraints(const OrthoFrame& frame, const Candidate& cand,
                               const Matrix& f) {
  const int n = frame.range_basis.rows();
  if (f.cols() != n) throw DimensionMismatch("constraint rows must have length n");
  if (static_cast<int>(cand.direction.size()) != n)
    throw DimensionMismatch("candidate direction length");
  Matrix align = f * frame.range_basis;
  if (max_abs(align) > 1e-8)
    throw std::invalid_argument("constraint rows must be orthogonal to the range");

  const int m = f.rows();
  Vector d = f * frame.mismatch_dir;
  Matrix out(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i)
      out(i, j) = d[j] * cand.direction[i] + f(j, i) - d[j] * frame.mismatch_dir[i];
  return out;
}

Detection recover_underdetermined(const Matrix& f, const Vector& y_tilde,
                                  int snbr, double eps, std::uint64_t seed,
                                  const SolverConfig& cfg) {
  const int m = f.rows();
  const int n = f.cols();
  if (m < 1 || m >= n)
    throw std::invalid_argument("recovery needs a wide constraint matrix");
  if (static_cast<int>(y_tilde.size()) != m)
    throw DimensionMismatch("measurement length");
  require_finite(y_tilde, "measurements");

  SvdResult s = svd(f);
  if (numerical_rank(s, m, n) < m)
    throw std::invalid_argument("recovery needs full row rank");
  Vector anchor = pseudo_inverse_apply(s, y_tilde);
  if (norm2(f * anchor - y_tilde) > 1e-8 * std::max(1.0, norm2(y_tilde)))
    throw InfeasibleInput("measurements are outside the range of the matrix");

  Matrix kernel = s.v.col_range(m, n - m);
  Detection det = detect(Problem{kernel, anchor}, snbr, eps, seed, cfg, 0.0);

  // Refit magnitudes on the detected support: the soft threshold biases the
  // surviving entries, and the contract wants f * e to reproduce y_tilde.
  if (!det.support.empty()) {
    Matrix cols(m, static_cast<int>(det.support.size()));
    for (size_t j = 0; j < det.support.size(); ++j)
      cols.set_col(static_cast<int>(j), f.col(det.support[j]));
    Vector fitted = pseudo_inverse_apply(cols, y_tilde);
    Vector refit(n, 0.0);
    for (size_t j = 0; j < det.support.size(); ++j)
      refit[det.support[j]] = fitted[j];
    det.scaled = std::move(refit);
  }
  return det;
}

InvarianceReport verify_invariance(const Matrix& phi, const Problem& p,
                                   long cap, double tol) {
  const int n = p.a.rows();
  if (phi.rows() != n || phi.cols() != n)
    throw DimensionMismatch("transformation must be square of the problem size");

  InvarianceReport rep;
  {
    SvdResult s = svd(phi);
    rep.invertible = numerical_rank(s, n, n) == n;
  }
  {
    Matrix gram = phi.transposed() * phi;
    for (int i = 0; i < n; ++i) gram(i, i) -= 1.0;
    rep.ortho_error = max_abs(gram);
    rep.orthogonal = rep.ortho_error <= tol;
  }
  {
    Matrix spanned = hcat(p.a, Matrix::column(p.y));
    Matrix comp(n, 0);
    try {
      comp = orthobasis_complement(spanned);
    } catch (const FullRank&) {
    }
    for (int j = 0; j < comp.cols(); ++j) {
      Vector c = comp.col(j);
      Vector image = phi * c;
      rep.fix_error = std::max(rep.fix_error, norm_inf(image - c));
    }
    rep.fixes_complement = rep.fix_error <= tol;
  }

  try {
    OracleResult before = l0_oracle(p, cap);
    OracleResult after = l0_oracle(Problem{phi * p.a, phi * p.y}, cap);
    rep.min_l0_before = before.min_l0;
    rep.min_l0_after = after.min_l0;
    rep.counts_equal = before.min_l0 == after.min_l0;
    std::vector<std::vector<int>> sb, sa;
    for (const auto& sol : before.solutions) sb.push_back(sol.support);
    for (const auto& sol : after.solutions) sa.push_back(sol.support);
    rep.supports_equal = sb == sa;
  } catch (const EnumerationTooLarge&) {
    throw OracleTooLarge("enumeration exceeds the verification cap");
  }

  rep.passed = rep.invertible && rep.orthogonal && rep.fixes_complement &&
               rep.counts_equal && rep.supports_equal;
  return rep;
}

}  // namespace sitl1
