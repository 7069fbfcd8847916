/*
 *  Copyright 2026 the blowlab authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#ifndef BLOWLAB_PIPELINE_HPP
#define BLOWLAB_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "blowlab/bounds.hpp"
#include "blowlab/config.hpp"

namespace blowlab {

enum class RunStatus { success, no_blowup, numerical_failure };

/** Analysis series of one similarity center. Entries needing theta_s
 *  (rhs, residual, window integrands) are NaN at the series ends. */
struct CenterAnalysis {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  std::vector<double> s;
  std::vector<double> t;
  std::vector<EnergyBreakdown> energy;      ///< configured convention
  std::vector<EnergyBreakdown> energy_alt;  ///< the other convention
  std::vector<DissipationRhs> rhs;
  std::vector<double> residual17;
  std::vector<WindowIntegrands> wintegrands;
  std::vector<WindowReport> windows;
  std::vector<BoundsReport> bounds;
  std::vector<Thm12Parts> thm12;
  DissipationCheck dissipation;
  DissipationCheck dissipation_alt;
  SupSummary sup_thm11, sup_thm12, sup_p31, sup_p32, sup_p33, sup_lr_theta,
      sup_lr_conv;
  double min_E = 0.0;
  int w4_violations = 0;  ///< windows with w4 > (4/3)^alpha w3
  double accumulator_check = -1.0;  ///< debug mode: max rel deviation
};

struct RunOptions {
  bool debug_history_check = false;  ///< retain frames, cross-check P1..P5
};

struct RunResult {
  RunStatus status = RunStatus::success;
  std::string message;
  BlowupEstimate estimate;
  double T_prime = 0.0;
  double s0 = 0.0;
  bool ut_sign_change = false;
  bool reduced_smoothness = false;
  Trajectory trajectory;  ///< the recording run (main when it exists)
  std::vector<CenterAnalysis> centers;
};

/**
 * Two-pass experiment: a pilot run estimates T, the main run records
 * snapshots on the uniform-s schedule and drives the per-center analysis.
 * With a non-empty `out_dir` all output files are written there.
 * Deterministic given the config.
 */
RunResult run_experiment(const RunConfig& config, const std::string& out_dir,
                         const RunOptions& options = {});

struct SweepRow {
  std::string name;
  bool ok = false;
  std::string error;
  int N = 0;
  double p = 0.0;
  double T_est = 0.0;
  double min_E = 0.0;
  double sup_thm11 = 0.0;
  double sup_thm12 = 0.0;
  double max_diss_residual = 0.0;
  int monotone_violations = 0;
};

/** Runs each config into its own subdirectory of out_root; failures are
 *  isolated per row. Returns the aggregate table. */
std::vector<SweepRow> sweep(const std::vector<std::string>& config_paths,
                            const std::string& out_root);

struct ConvergenceLevel {
  int nx = 0;
  int nz = 0;
  double ds = 0.0;
  double safety = 0.0;
  double flat_ode_err = 0.0;      ///< flat runs only, else NaN
  double theta_fixed_point = 0.0; ///< flat runs only, else NaN
  double max_residual17 = 0.0;
  double med_diss_residual = 0.0;
};

/** Refinement ladder: halves dx, dz, ds, and the dt safety factor per
 *  level, re-running the full pipeline. */
std::vector<ConvergenceLevel> convergence_ladder(const RunConfig& base,
                                                 int levels);

}  // namespace blowlab

#endif  // BLOWLAB_PIPELINE_HPP
