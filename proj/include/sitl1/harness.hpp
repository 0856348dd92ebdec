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
// Experiment runner: seeded instance generators, the three detection methods
// (randomized search, plain least absolute deviation, reweighted l1), metric
// scoring against the planted support, and CSV emission.

#ifndef SITL1_HARNESS_HPP_
#define SITL1_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sitl1/oracle.hpp"
#include "sitl1/sit.hpp"

namespace sitl1 {

struct ExperimentConfig {
  std::string name = "detection";
  int n = 64;
  int r = 8;
  int k = 14;    // rows drawn from the shifted Gaussian block
  int s = 9;     // planted error count
  double t_fraction = 1.0;        // fraction of errors on shifted rows
  double error_magnitude = 10.0;
  double noise_std = 0.0;
  double eps = 0.2;               // support threshold
  double sigma = -1.0;            // l2 slack; negative means auto
  int snbr = 100;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> methods{"sit", "lad", "reweighted"};
  std::string out_path = "results";
};

// Parses a JSON object whose keys are the ExperimentConfig field names.
// Missing keys keep defaults; sigma resolves to sqrt(n) * noise_std when
// left negative. Throws ConfigError on unknown keys or invalid values.
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

struct Instance {
  Problem problem;
  Vector x_true;
  Vector e_true;
  std::vector<int> true_support;
};

// 52x2 straight-line design [alpha, 1] with 20 planted outliers of value 20.
// kind "uniform": alpha(i) = i; kind "tailored": alpha jumps by 20 after row
// 32. Gaussian coefficients, optional Gaussian observation noise.
Instance gen_regression_instance(const std::string& kind, double noise_std,
                                 std::uint64_t seed, std::uint64_t stream = 0);

// Two-block Gaussian design: first n-k rows standard normal, last k rows
// mean 5. round(t_fraction * s) errors land uniformly on the mean-5 rows,
// the rest on the standard-normal rows, all with the configured magnitude.
// Needs 0 < k < n.
Instance gen_detection_instance(const ExperimentConfig& cfg, std::uint64_t seed,
                                std::uint64_t stream = 0);

struct TrialRecord {
  int trial_id = 0;
  std::string method;
  bool exact_support_match = false;
  double per_entry_accuracy = 0.0;  // (true pos + true neg) / n
  int l0_detected = 0;
  int l0_true = 0;
  double wall_ms = 0.0;  // not serialized; reruns must be byte-identical
  bool solver_ok = true;
};

struct MethodSummary {
  std::string method;
  int trials = 0;
  double exact_rate = 0.0;
  double mean_accuracy = 0.0;
  double mean_wall_ms = 0.0;
  double certified_exact_rate = -1.0;  // -1 when the oracle is out of reach
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<MethodSummary> summaries;
};

// Runs every (trial, method) cell, writes <out_path>/<name>.csv with one row
// per cell and appends one row per method to <out_path>/summary.csv. Solver
// failures inside a trial are recorded in the row, not fatal.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SweepPoint {
  int snbr = 0;
  double exact_rate = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  int knee_snbr = 0;  // smallest sample count within 0.02 of the final rate
};

// Exact-support rate as a function of the sample budget, with every budget
// evaluated on the same sample stream prefix per trial.
SweepResult run_snbr_sweep(const ExperimentConfig& cfg,
                           const std::vector<int>& snbr_values);

struct WorkedExample {
  Problem problem;
  Vector lad_residual;
  double lad_objective = 0.0;
  Vector oracle_error;
  std::vector<int> oracle_support;
  int oracle_min_l0 = 0;
  Matrix phi;               // reference rotation with four-decimal entries
  double phi_fix_z_error = 0.0;
  double phi_ortho_error = 0.0;
  Vector phi_y;
  Vector phi_a;
  Vector transformed_sparsest;
  Detection detection;
  bool certified_exact = false;
  InvarianceReport invariance;
};

// The 3x1 showcase instance where plain l1 regression misses the sparsest
// error and the randomized search finds it; every derived quantity is
// recomputed and returned for golden-value checks.
WorkedExample run_worked_example();

}  // namespace sitl1

#endif  // SITL1_HARNESS_HPP_
