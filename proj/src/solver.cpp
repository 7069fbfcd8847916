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

#include "blowlab/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace blowlab {

FieldSnapshot init_state(const GridSpec& grid, const InitialCondition& ic) {
  const std::size_t n = grid.size();
  FieldSnapshot snap;
  snap.t = 0.0;

  switch (ic.kind) {
    case InitialCondition::Kind::flat: {
      if (!std::isfinite(ic.u0_const) || !std::isfinite(ic.u1_const))
        throw std::invalid_argument("init_state: non-finite flat IC");
      snap.u.assign(n, ic.u0_const);
      snap.ut.assign(n, ic.u1_const);
      break;
    }
    case InitialCondition::Kind::gaussian: {
      if (!std::isfinite(ic.width) || !std::isfinite(ic.u0_amp) ||
          !std::isfinite(ic.u1_amp) || !std::isfinite(ic.u1_base))
        throw std::invalid_argument("init_state: non-finite gaussian IC");
      if (ic.width < 2.0 * grid.dx())
        throw std::invalid_argument(
            "init_state: gaussian width < 2*dx is unresolved");
      snap.u.assign(n, 0.0);
      snap.ut.assign(n, 0.0);
      const double inv_w2 = 1.0 / (ic.width * ic.width);
      for (std::size_t f = 0; f < n; ++f) {
        const auto idx = grid.unravel(f);
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
          const double dxi = grid.coord(idx[d]) - ic.center[d];
          r2 += dxi * dxi;
        }
        const double bump = std::exp(-r2 * inv_w2);
        snap.u[f] = ic.u0_amp * bump;
        snap.ut[f] = ic.u1_base + ic.u1_amp * bump;
      }
      break;
    }
    case InitialCondition::Kind::table: {
      if (ic.table_u0.size() != n || ic.table_u1.size() != n)
        throw std::invalid_argument("init_state: table size mismatch");
      if (!all_finite(ic.table_u0) || !all_finite(ic.table_u1))
        throw std::invalid_argument("init_state: non-finite table IC");
      snap.u = ic.table_u0;
      snap.ut = ic.table_u1;
      break;
    }
  }
  return snap;
}

void rhs(const FieldSnapshot& state, const GridSpec& grid, double p, Field& du,
         Field& dut, int stencil_order, bool nonlinear) {
  if (!all_finite(state.u) || !all_finite(state.ut))
    throw std::domain_error("rhs: non-finite field");
  du = state.ut;
  laplacian(grid, state.u, dut, stencil_order);
  if (nonlinear) {
    for (std::size_t f = 0; f < dut.size(); ++f) {
      dut[f] += signed_power(state.ut[f], p);
    }
  }
}

double admissible_dt(const GridSpec& grid, double p, double sup_ut,
                     const StepLimits& limits) {
  double dt = limits.cfl * grid.dx();
  if (sup_ut > 0.0) {
    dt = std::min(dt, limits.safety / (p * std::pow(sup_ut, p - 1.0)));
  }
  return dt;
}

FieldSnapshot step(const FieldSnapshot& state, const GridSpec& grid, double p,
                   double dt, const StepLimits& limits, int stencil_order,
                   bool nonlinear) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt > 0 required");
  const double slack = 1.0 + 1e-12;
  if (dt > limits.cfl * grid.dx() * slack)
    throw std::invalid_argument("step: dt violates the CFL bound");
  if (nonlinear) {
    const double sup = max_abs(state.ut);
    if (sup > 0.0 &&
        dt > slack * limits.safety / (p * std::pow(sup, p - 1.0)))
      throw std::invalid_argument("step: dt violates the stiffness guard");
  }

  const std::size_t n = grid.size();
  Field k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  FieldSnapshot tmp;
  tmp.u.resize(n);
  tmp.ut.resize(n);

  rhs(state, grid, p, k1u, k1v, stencil_order, nonlinear);
  for (std::size_t f = 0; f < n; ++f) {
    tmp.u[f] = state.u[f] + 0.5 * dt * k1u[f];
    tmp.ut[f] = state.ut[f] + 0.5 * dt * k1v[f];
  }
  rhs(tmp, grid, p, k2u, k2v, stencil_order, nonlinear);
  for (std::size_t f = 0; f < n; ++f) {
    tmp.u[f] = state.u[f] + 0.5 * dt * k2u[f];
    tmp.ut[f] = state.ut[f] + 0.5 * dt * k2v[f];
  }
  rhs(tmp, grid, p, k3u, k3v, stencil_order, nonlinear);
  for (std::size_t f = 0; f < n; ++f) {
    tmp.u[f] = state.u[f] + dt * k3u[f];
    tmp.ut[f] = state.ut[f] + dt * k3v[f];
  }
  rhs(tmp, grid, p, k4u, k4v, stencil_order, nonlinear);

  FieldSnapshot next;
  next.t = state.t + dt;
  next.u.resize(n);
  next.ut.resize(n);
  const double w = dt / 6.0;
  for (std::size_t f = 0; f < n; ++f) {
    next.u[f] = state.u[f] + w * (k1u[f] + 2.0 * k2u[f] + 2.0 * k3u[f] + k4u[f]);
    next.ut[f] =
        state.ut[f] + w * (k1v[f] + 2.0 * k2v[f] + 2.0 * k3v[f] + k4v[f]);
  }
  return next;
}

Trajectory run_to_blowup(
    const SolverConfig& config, const std::vector<double>& snapshot_times,
    const std::function<void(const FieldSnapshot&)>& on_time) {
  Trajectory traj;
  FieldSnapshot state = init_state(config.grid, config.ic);
  const double p = config.params.p;

  std::size_t next_snap = 0;
  // Snapshot requested at t = 0 (or clamped negatives from the schedule).
  while (on_time && next_snap < snapshot_times.size() &&
         snapshot_times[next_snap] <= state.t) {
    on_time(state);
    ++next_snap;
  }

  double sup = max_abs(state.ut);
  traj.points.push_back({state.t, sup, 0.0});

  while (true) {
    if (!std::isfinite(sup))
      throw std::runtime_error("run_to_blowup: field became non-finite");
    if (sup >= config.blowup_threshold) {
      traj.threshold_reached = true;
      break;
    }
    if (state.t >= config.t_max) break;

    double dt = admissible_dt(config.grid, p, sup, config.limits);
    bool snap_here = false;
    if (next_snap < snapshot_times.size() &&
        state.t + dt >= snapshot_times[next_snap] - 1e-15) {
      dt = snapshot_times[next_snap] - state.t;
      snap_here = true;
    }
    dt = std::min(dt, config.t_max - state.t);
    if (snap_here && !(state.t + dt > state.t)) {
      // Scheduled time already reached within rounding.
      if (on_time) on_time(state);
      ++next_snap;
      continue;
    }
    if (!(state.t + dt > state.t)) {
      // Time resolution exhausted; the run cannot advance further.
      traj.dt_underflow = true;
      break;
    }

    state = step(state, config.grid, p, dt, config.limits,
                 config.stencil_order);
    sup = max_abs(state.ut);
    traj.points.push_back({state.t, sup, dt});

    if (snap_here) {
      if (on_time) on_time(state);
      ++next_snap;
    }
  }
  return traj;
}

BlowupEstimate estimate_T(const std::vector<TrajectoryPoint>& series, double p,
                          double growth_floor) {
  BlowupEstimate est;

  // Trailing run of points above the growth floor.
  std::size_t lo = series.size();
  while (lo > 0 && series[lo - 1].sup_ut >= growth_floor) --lo;
  const std::size_t count = series.size() - lo;
  if (count < 8) {
    est.failure_reason = "insufficient growth";
    return est;
  }
  for (std::size_t i = lo + 1; i < series.size(); ++i) {
    if (series[i].sup_ut < series[i - 1].sup_ut) {
      est.failure_reason = "series not monotone near its end";
      return est;
    }
  }

  // Centered least squares on y = sup^{-(p-1)}; T is the root of the line.
  double tbar = 0.0, ybar = 0.0;
  std::vector<double> ys(count);
  for (std::size_t i = 0; i < count; ++i) {
    ys[i] = std::pow(series[lo + i].sup_ut, -(p - 1.0));
    tbar += series[lo + i].t;
    ybar += ys[i];
  }
  tbar /= count;
  ybar /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dt = series[lo + i].t - tbar;
    sxx += dt * dt;
    sxy += dt * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) {
    est.failure_reason = "degenerate fit window";
    return est;
  }
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) {
    est.failure_reason = "no decay in sup^{-(p-1)}";
    return est;
  }
  est.T_est = tbar - ybar / slope;
  est.fit_t_lo = series[lo].t;
  est.fit_t_hi = series.back().t;

  double rss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = ys[i] - (ybar + slope * (series[lo + i].t - tbar));
    rss += r * r;
  }
  est.fit_residual = std::sqrt(rss / count);
  est.detected = est.T_est > est.fit_t_hi;
  if (!est.detected) est.failure_reason = "fitted T not beyond the data";
  return est;
}

std::vector<double> schedule_snapshots(double T_est, double s0, double ds,
                                       double s_max) {
  if (!(ds > 0.0)) throw std::invalid_argument("schedule_snapshots: ds > 0");
  if (!(T_est > 0.0)) throw std::invalid_argument("schedule_snapshots: T > 0");
  std::vector<double> times;
  if (s0 > s_max) return times;
  const int k_max = static_cast<int>(std::floor((s_max - s0) / ds + 1e-9));
  times.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double s = s0 + k * ds;
    double t = T_est - std::exp(-s);
    if (t < 0.0) {
      if (t < -1e-9 * T_est)
        throw std::invalid_argument("schedule_snapshots: schedule before t=0");
      t = 0.0;
    }
    times.push_back(t);
  }
  return times;
}

}  // namespace blowlab
