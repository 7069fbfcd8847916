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

#ifndef BLOWLAB_ENERGY_HPP
#define BLOWLAB_ENERGY_HPP

#include <array>
#include <vector>

#include "blowlab/similarity.hpp"

namespace blowlab {

/**
 * The two bookkeeping conventions for the gradient-history term: the
 * energy display writes its bracket as |4 grad(tau) - grad(s)|^2 -
 * |grad(s)|^2 with prefactor 1/8, the derivation tracks
 * |2 grad(tau) - grad(s)/2|^2 with prefactor 1/2 and a separate
 * |grad(s)|^2 correction. They expand to the same history integral;
 * both are evaluated so the dissipation checker can referee.
 */
enum class T3Convention { as_stated, proof_i1 };

/** The seven signed energy terms; E = T1 - T2 - T3 - T4 - T5 + T6 + T7. */
struct EnergyBreakdown {
  double s = 0.0;
  std::array<double, 7> T{};  // T[0] = T1, ...
  double E = 0.0;
};

struct DissipationRhs {
  double s = 0.0;
  std::array<double, 5> terms{};  ///< each is minus a nonnegative integral
  double total = 0.0;
};

struct DissipationReport {
  double s = 0.0;
  double dE_fd = 0.0;     ///< centered difference of E across frames
  double rhs = 0.0;
  double residual = 0.0;  ///< |dE_fd - rhs| / (|rhs| + 1e-12 g(s))
  bool monotone = true;   ///< E(s_k) <= E(s_{k-1}) + 1e-6 (1 + |E(s_{k-1})|)
};

/** Window form E(s+1) - E(s) against the integrated right side, evaluated
 *  with the kernel at s' (the calculus reading) and frozen at the window
 *  start (the reading as displayed). */
struct WindowIdentityReport {
  double s = 0.0;
  double dE_window = 0.0;
  double int_rhs = 0.0;         ///< kernels at s'
  double int_rhs_frozen = 0.0;  ///< first two kernels frozen at s
  double residual = 0.0;
  double residual_frozen = 0.0;
};

EnergyBreakdown energy_terms(const ThetaFrame& frame,
                             const HistoryAccumulators& acc,
                             const Theta00& theta00, const ModelParams& params,
                             const BallGrid& ball,
                             T3Convention convention = T3Convention::as_stated);

/** The five dissipation integrals at one frame; theta_s comes from a
 *  centered difference of the adjacent frames, never from the equation. */
DissipationRhs dissipation_rhs(const ThetaFrame& frame,
                               const BallField& theta_s,
                               const ModelParams& params, const BallGrid& ball);

struct DissipationCheck {
  std::vector<DissipationReport> reports;        ///< one per interior frame
  std::vector<WindowIdentityReport> windows;     ///< one per full window
  int monotone_violations = 0;
};

/**
 * Referees the identity dE/ds = rhs on a uniform s-grid: centered
 * differences of E against the pointwise rhs, the window form over
 * [s, s+1], and the monotonicity flags. Violations are reported, not
 * thrown. rhs entries at the series ends may be absent (empty total).
 */
DissipationCheck check_dissipation(const std::vector<double>& s,
                                   const std::vector<double>& E,
                                   const std::vector<DissipationRhs>& rhs,
                                   const ModelParams& params);

/** Closed form of E on a flat run (theta == kappa, grad theta00 == 0). */
double flat_energy_oracle(const ModelParams& params, double kappa, double s,
                          double s0, double R_alpha, double R_alpha_m1);

}  // namespace blowlab

#endif  // BLOWLAB_ENERGY_HPP
