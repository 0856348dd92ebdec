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

#ifndef SITL1_ERRORS_HPP_
#define SITL1_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sitl1 {

// Base for all library errors so callers can catch everything in one clause.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical routine did not converge or hit an unrecoverable state.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

// Requested the orthogonal complement of a matrix whose columns already
// span the full space.
class FullRank : public Error {
 public:
  using Error::Error;
};

// y lies in the column span of A; there is no mismatch direction to work
// with and the zero-error solution is already exact.
class DegenerateY : public Error {
 public:
  using Error::Error;
};

// A single randomized sample produced a solution that cannot be rescaled
// (the mismatch direction is numerically orthogonal to it).
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

// Every sample of a randomized search was degenerate.
class AllSamplesDegenerate : public Error {
 public:
  using Error::Error;
};

// The rows outside a detected support do not determine the coefficients.
class RankDeficientComplement : public Error {
 public:
  using Error::Error;
};

// Orthonormal completion hit a numerically dependent direction.
class GramSchmidtBreakdown : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Right-hand side is not reachable by the given operator.
class InfeasibleInput : public Error {
 public:
  using Error::Error;
};

// Exhaustive search would exceed the configured candidate cap.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

// Invariance check would need an exhaustive search beyond the cap.
class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

// Bad experiment or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sitl1

#endif  // SITL1_ERRORS_HPP_
