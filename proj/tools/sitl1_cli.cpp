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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sitl1/csv.hpp"
#include "sitl1/errors.hpp"
#include "sitl1/harness.hpp"
#include "sitl1/oracle.hpp"
#include "sitl1/sit.hpp"

namespace {

using namespace sitl1;

std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string show(const Vector& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += show(v[i]);
  }
  return out;
}

// Supports are zero-based internally; printed one-based.
std::string show_support(const std::vector<int>& support) {
  if (support.empty()) return "(empty)";
  std::string out;
  for (size_t i = 0; i < support.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(support[i] + 1);
  }
  return out;
}

void print_detection(const Detection& det) {
  std::cout << "support: " << show_support(det.support) << "\n"
            << "l0: " << det.l0 << "\n"
            << "lambda: " << show(det.scale) << "\n"
            << "x_hat: " << show(det.coeffs) << "\n"
            << "solver status: " << to_string(det.report.status) << "\n";
}

int run_example(bool* ok_out) {
  WorkedExample ex = run_worked_example();
  bool ok = true;
  auto check = [&](const char* label, bool pass) {
    std::cout << (pass ? "  [ok] " : "  [FAIL] ") << label << "\n";
    ok = ok && pass;
  };
  std::cout << "plain l1 regression residual: " << show(ex.lad_residual)
            << " (objective " << show(ex.lad_objective) << ")\n";
  std::cout << "sparsest error (oracle): " << show(ex.oracle_error)
            << ", support " << show_support(ex.oracle_support) << "\n";
  std::cout << "rotation image of y: " << show(ex.phi_y) << "\n";
  std::cout << "rotation image of the design column: " << show(ex.phi_a) << "\n";
  std::cout << "sparsest error after rotation: " << show(ex.transformed_sparsest)
            << "\n";
  std::cout << "randomized detection: support "
            << show_support(ex.detection.support) << ", rescaled "
            << show(ex.detection.scaled) << "\n";
  check("rotation fixes the complement axis", ex.phi_fix_z_error <= 1e-3);
  check("rotation is orthogonal", ex.phi_ortho_error <= 1e-3);
  check("sparsity structure preserved", ex.invariance.passed);
  check("detection certified exact", ex.certified_exact);
  if (ok_out) *ok_out = ok;
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsest additive error detection in over-determined systems"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string matrix_path, y_path, out_path, config_path;
  int snbr = 50;
  double eps = 0.1;
  std::uint64_t seed = 1;
  double sigma = 0.0;
  long cap = kDefaultOracleCap;

  auto* det_cmd = app.add_subcommand("detect", "one-shot randomized detection");
  det_cmd->add_option("--matrix", matrix_path, "design matrix CSV")->required();
  det_cmd->add_option("--y", y_path, "observation vector CSV")->required();
  det_cmd->add_option("--snbr", snbr, "random candidate count");
  det_cmd->add_option("--eps", eps, "soft threshold");
  det_cmd->add_option("--seed", seed, "random seed");
  det_cmd->add_option("--sigma", sigma, "l2 slack for noisy data (0 = exact)");
  det_cmd->add_option("--out", out_path, "write the rescaled error vector CSV");
  det_cmd->callback([&] {
    Problem p{load_matrix_csv(matrix_path), load_vector_csv(y_path)};
    Detection det = detect(p, snbr, eps, seed, SolverConfig{}, sigma);
    print_detection(det);
    if (!out_path.empty()) save_vector_csv(out_path, det.scaled);
  });

  auto* rec_cmd =
      app.add_subcommand("recover", "sparsest solution of a wide system");
  rec_cmd->add_option("--f", matrix_path, "wide constraint matrix CSV")->required();
  rec_cmd->add_option("--y", y_path, "measurement vector CSV")->required();
  rec_cmd->add_option("--snbr", snbr, "random candidate count");
  rec_cmd->add_option("--eps", eps, "soft threshold");
  rec_cmd->add_option("--seed", seed, "random seed");
  rec_cmd->add_option("--out", out_path, "write the recovered vector CSV");
  rec_cmd->callback([&] {
    Matrix f = load_matrix_csv(matrix_path);
    Vector yt = load_vector_csv(y_path);
    Detection det = recover_underdetermined(f, yt, snbr, eps, seed);
    std::cout << "recovered: " << show(det.scaled) << "\n";
    print_detection(det);
    if (!out_path.empty()) save_vector_csv(out_path, det.scaled);
  });

  auto* orc_cmd = app.add_subcommand("oracle", "exact enumeration ground truth");
  orc_cmd->add_option("--matrix", matrix_path, "design matrix CSV")->required();
  orc_cmd->add_option("--y", y_path, "observation vector CSV")->required();
  orc_cmd->add_option("--cap", cap, "enumeration cap");
  orc_cmd->callback([&] {
    Problem p{load_matrix_csv(matrix_path), load_vector_csv(y_path)};
    OracleResult orc = l0_oracle(p, cap);
    std::cout << "min l0: " << orc.min_l0 << "\n"
              << "subsets enumerated: " << orc.enumerated << "\n";
    for (const auto& sol : orc.solutions)
      std::cout << "  support " << show_support(sol.support) << ": e = ["
                << show(sol.e) << "], x = [" << show(sol.x) << "]\n";
  });

  auto* exp_cmd = app.add_subcommand("experiment", "config-driven trial sweep");
  exp_cmd->add_option("--config", config_path, "JSON config file")->required();
  exp_cmd->callback([&] {
    ExperimentConfig cfg = load_config(config_path);
    ExperimentResult res = run_experiment(cfg);
    std::cout << "experiment " << cfg.name << ": " << cfg.trials
              << " trials written to " << cfg.out_path << "\n";
    for (const auto& sum : res.summaries) {
      std::cout << "  " << sum.method << ": exact-support rate "
                << show(sum.exact_rate) << ", per-entry accuracy "
                << show(sum.mean_accuracy);
      if (sum.certified_exact_rate >= 0.0)
        std::cout << ", certified exact " << show(sum.certified_exact_rate);
      std::cout << ", mean wall " << show(sum.mean_wall_ms) << " ms\n";
    }
  });

  auto* ex_cmd =
      app.add_subcommand("example31", "golden 3x1 showcase reproduction");
  ex_cmd->callback([&] {
    bool ok = false;
    exit_code = run_example(&ok);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const sitl1::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sitl1::DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sitl1::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
