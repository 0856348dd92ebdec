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
// Exact ground truth at small scale. Every candidate for the sparsest error
// comes from interpolating some full-rank subset of r rows exactly, so
// enumerating the C(n, r) row subsets finds all minimizers.

#ifndef SITL1_ORACLE_HPP_
#define SITL1_ORACLE_HPP_

#include <vector>

#include "sitl1/matrix.hpp"
#include "sitl1/sit.hpp"

namespace sitl1 {

inline constexpr long kDefaultOracleCap = 2000000;

// C(n, k), saturating at a large sentinel instead of overflowing.
long binomial(int n, int k);

struct OracleSolution {
  Vector x;
  Vector e;                  // y - a x
  std::vector<int> support;  // zero-based, sorted
};

struct OracleResult {
  int min_l0 = 0;
  std::vector<OracleSolution> solutions;  // distinct supports, sorted
  long enumerated = 0;
};

// Enumerates all size-r row subsets with full-rank square blocks, solves each
// exactly, and returns every minimizer of the nonzero count (zero tolerance
// 1e-7 * max(1, ||y||_inf)). Throws EnumerationTooLarge past the cap.
OracleResult l0_oracle(const Problem& p, long cap = kDefaultOracleCap);

enum class CertifyStatus { Exact, Suboptimal, TooLarge };

struct Certification {
  CertifyStatus status = CertifyStatus::TooLarge;
  int excess = 0;  // detection l0 minus oracle minimum, when computable
};

// Exact iff the detection matches the oracle minimum and its support is one
// of the optimal supports. Enumeration overflow is reported in-band.
Certification certify(const Problem& p, const Detection& det,
                      long cap = kDefaultOracleCap);

const char* to_string(CertifyStatus s);

}  // namespace sitl1

#endif  // SITL1_ORACLE_HPP_
