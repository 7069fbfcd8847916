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

#ifndef BLOWLAB_SOLVER_HPP
#define BLOWLAB_SOLVER_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/model.hpp"

namespace blowlab {

struct InitialCondition {
  enum class Kind { flat, gaussian, table };
  Kind kind = Kind::flat;

  // flat
  double u0_const = 0.0;
  double u1_const = 1.0;

  // gaussian bump: u = amp * exp(-|x-center|^2 / width^2), u1 on top of a
  // constant base so localized blow-up over a flat background is expressible.
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double width = 0.5;
  double u0_amp = 0.0;
  double u1_amp = 0.0;
  double u1_base = 0.0;

  // custom table, sized to the grid
  Field table_u0;
  Field table_u1;
};

/** Discretized (u, u_t) at one time. */
struct FieldSnapshot {
  double t = 0.0;
  Field u;
  Field ut;
};

struct BlowupEstimate {
  double T_est = 0.0;
  double fit_t_lo = 0.0;
  double fit_t_hi = 0.0;
  double fit_residual = 0.0;
  bool detected = false;
  std::string failure_reason;  ///< set when detected == false
};

struct TrajectoryPoint {
  double t;
  double sup_ut;
  double dt;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool threshold_reached = false;
  bool dt_underflow = false;  ///< time step fell below time resolution
};

struct StepLimits {
  double cfl = 0.5;
  double safety = 0.1;
};

struct SolverConfig {
  GridSpec grid;
  ModelParams params;
  InitialCondition ic;
  StepLimits limits;
  double blowup_threshold = 1e8;
  double t_max = 10.0;
  int stencil_order = 2;
  double growth_floor = 1e3;  ///< sup|ut| level feeding the T fit
};

FieldSnapshot init_state(const GridSpec& grid, const InitialCondition& ic);

/** du = ut, dut = Lap(u) + ut|ut|^{p-1}. Throws on non-finite input. */
void rhs(const FieldSnapshot& state, const GridSpec& grid, double p,
         Field& du, Field& dut, int stencil_order = 2,
         bool nonlinear = true);

/**
 * One classical RK4 step. The caller owns dt control: steps violating
 * dt <= cfl*dx or dt <= safety/(p * sup|ut|^{p-1}) are rejected, not clipped.
 * `nonlinear = false` drops the source term (linear-wave test hook).
 */
FieldSnapshot step(const FieldSnapshot& state, const GridSpec& grid, double p,
                   double dt, const StepLimits& limits = {},
                   int stencil_order = 2, bool nonlinear = true);

/** Largest dt the limits admit for the current state. */
double admissible_dt(const GridSpec& grid, double p, double sup_ut,
                     const StepLimits& limits);

/**
 * Integrates with adaptive dt until sup|ut| reaches the threshold, t_max is
 * hit, or dt falls below time resolution. Calls `on_time` exactly at each
 * requested time in `snapshot_times` (strictly increasing).
 */
Trajectory run_to_blowup(
    const SolverConfig& config,
    const std::vector<double>& snapshot_times = {},
    const std::function<void(const FieldSnapshot&)>& on_time = nullptr);

/**
 * Fits y = sup|ut|^{-(p-1)} against t (y = (p-1)(T-t) for the exact ODE)
 * over the trailing points with sup|ut| >= growth_floor and returns
 * T = -intercept/slope. Needs at least 8 such points, nondecreasing.
 */
BlowupEstimate estimate_T(const std::vector<TrajectoryPoint>& series, double p,
                          double growth_floor = 1e3);

/** t_k = T_est - e^{-s_k}, s_k = s0 + k ds, s_k <= s_max. */
std::vector<double> schedule_snapshots(double T_est, double s0, double ds,
                                       double s_max);

}  // namespace blowlab

#endif  // BLOWLAB_SOLVER_HPP
