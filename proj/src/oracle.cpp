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

#include "sitl1/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sitl1/errors.hpp"

namespace sitl1 {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long result = 1;
  for (int i = 1; i <= k; ++i) {
    long factor = n - k + i;
    if (result > std::numeric_limits<long>::max() / factor)
      return std::numeric_limits<long>::max();
    result = result * factor / i;  // product of i consecutive factors
  }
  return result;
}

namespace {

// Solves the square system in place; false when a pivot vanishes.
bool solve_square(Matrix m, Vector rhs, Vector& out) {
  const int r = m.rows();
  double scale = std::max(max_abs(m), 1e-300);
  for (int c = 0; c < r; ++c) {
    int pivot = c;
    for (int i = c + 1; i < r; ++i)
      if (std::fabs(m(i, c)) > std::fabs(m(pivot, c))) pivot = i;
    if (std::fabs(m(pivot, c)) <= 1e-12 * scale) return false;
    if (pivot != c) {
      for (int j = 0; j < r; ++j) std::swap(m(c, j), m(pivot, j));
      std::swap(rhs[c], rhs[pivot]);
    }
    for (int i = c + 1; i < r; ++i) {
      double f = m(i, c) / m(c, c);
      if (f == 0.0) continue;
      for (int j = c; j < r; ++j) m(i, j) -= f * m(c, j);
      rhs[i] -= f * rhs[c];
    }
  }
  out.assign(r, 0.0);
  for (int i = r - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < r; ++j) s -= m(i, j) * out[j];
    out[i] = s / m(i, i);
  }
  return true;
}

}  // namespace

OracleResult l0_oracle(const Problem& p, long cap) {
  check_problem(p);
  const int n = p.a.rows();
  const int r = p.a.cols();
  if (binomial(n, r) > cap)
    throw EnumerationTooLarge("row-subset count exceeds the enumeration cap");

  const double ztol = 1e-7 * std::max(1.0, norm_inf(p.y));
  OracleResult result;
  result.min_l0 = n + 1;
  std::map<std::vector<int>, OracleSolution> best;

  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  Matrix block(r, r);
  Vector rhs(r), x;

  for (;;) {
    ++result.enumerated;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) block(i, j) = p.a(idx[i], j);
      rhs[i] = p.y[idx[i]];
    }
    if (solve_square(block, rhs, x)) {
      Vector ax = p.a * x;
      int l0 = 0;
      for (int i = 0; i < n; ++i)
        if (std::fabs(p.y[i] - ax[i]) > ztol) ++l0;
      if (l0 <= result.min_l0) {
        if (l0 < result.min_l0) {
          result.min_l0 = l0;
          best.clear();
        }
        OracleSolution sol;
        sol.x = x;
        sol.e.resize(n);
        for (int i = 0; i < n; ++i) {
          double v = p.y[i] - ax[i];
          if (std::fabs(v) > ztol)
            sol.support.push_back(i);
          else
            v = 0.0;
          sol.e[i] = v;
        }
        best.emplace(sol.support, std::move(sol));
      }
    }

    // next lexicographic subset
    int k = r - 1;
    while (k >= 0 && idx[k] == n - r + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }

  if (result.min_l0 > n)
    throw SolverFailure("no full-rank row subset found");
  result.solutions.reserve(best.size());
  for (auto& [support, sol] : best) result.solutions.push_back(std::move(sol));
  return result;
}

Certification certify(const Problem& p, const Detection& det, long cap) {
  OracleResult orc;
  try {
    orc = l0_oracle(p, cap);
  } catch (const EnumerationTooLarge&) {
    return {CertifyStatus::TooLarge, 0};
  }
  std::vector<int> support = det.support;
  std::sort(support.begin(), support.end());
  bool found = false;
  for (const auto& sol : orc.solutions)
    if (sol.support == support) {
      found = true;
      break;
    }
  if (det.l0 == orc.min_l0 && found) return {CertifyStatus::Exact, 0};
  return {CertifyStatus::Suboptimal, det.l0 - orc.min_l0};
}

const char* to_string(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::Exact: return "exact";
    case CertifyStatus::Suboptimal: return "suboptimal";
    case CertifyStatus::TooLarge: return "too-large";
  }
  return "unknown";
}

}  // namespace sitl1
