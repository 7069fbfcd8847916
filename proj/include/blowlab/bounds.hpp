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

#ifndef BLOWLAB_BOUNDS_HPP
#define BLOWLAB_BOUNDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "blowlab/energy.hpp"
#include "blowlab/similarity.hpp"

namespace blowlab {

/** Per-frame record of every tracked bound quantity. Discrete Sobolev
 *  norms always include the L2 part: |f|_{H1}^2 = |f|^2 + |grad f|^2. */
struct BoundsReport {
  double s = 0.0;
  double t = 0.0;
  double thm11 = 0.0;    ///< e^{-2s}|h2*theta|_{H1}^2 + |theta|_{L2}^2
  double thm12 = 0.0;    ///< (T-t)^{2b}[|u|_{H2}^2 + |u_t|_{H1}^2], NaN out of window
  double p31 = 0.0;      ///< int theta^2
  double p32 = 0.0;      ///< e^{-2s} int |h2*grad theta|^2
  double p33 = 0.0;      ///< e^{-2s} int (h2*theta)^2
  double lr_theta = 0.0; ///< |theta|_{L^r}
  double lr_conv = 0.0;  ///< e^{-s}|h2*theta|_{L^r}
};

struct Thm11Parts {
  double p31 = 0.0, p32 = 0.0, p33 = 0.0;
  double total() const { return p31 + p32 + p33; }
};

Thm11Parts thm11_quantity(const ThetaFrame& frame,
                          const HistoryAccumulators& acc,
                          const ModelParams& params, const BallGrid& ball);

struct Thm12Parts {
  bool in_window = false;  ///< t in [T(1-1/e), T)
  double u_part = 0.0;     ///< (T-t)^{2b} |u|_{H2(B_a)}^2
  double ut_part = 0.0;    ///< (T-t)^{2b} |u_t|_{H1(B_a)}^2
  double total() const { return u_part + ut_part; }
};

/** Solver-grid derivatives interpolated onto the ball around `a`. Reports
 *  out-of-window times as skipped rather than failing. */
Thm12Parts thm12_quantity(const FieldSnapshot& snap, double T,
                          const std::array<double, 3>& a,
                          const ModelParams& params, const GridSpec& grid,
                          const BallGrid& ball);

/** Ball integrals of one frame feeding the window quantities. */
struct WindowIntegrands {
  double s = 0.0;
  double w2_g = 0.0;   ///< g(s) Q(theta_s^2 + |theta|^{p+1} + theta^2, alpha)
  double w2_g2 = 0.0;  ///< g2(s) Q(|grad theta|^2, alpha)
  double w3 = 0.0;     ///< Q(theta_s^2 + theta^2 + |theta|^{p+1} + |grad theta|^2, alpha)
  double w4 = 0.0;     ///< same integrand over B_{1/2}, unweighted
};

WindowIntegrands window_integrands(const ThetaFrame& frame,
                                   const BallField& theta_s,
                                   const ModelParams& params,
                                   const BallGrid& ball);

struct WindowReport {
  double s = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double w4 = 0.0;
};

/** Trapezoid over [s, s+1] of the per-frame integrands (uniform grid). */
std::vector<WindowReport> cor31_windows(
    const std::vector<WindowIntegrands>& series);

/** L^r norms of theta and of e^{-s} h2*theta over the masked ball.
 *  r >= 1 required; for N >= 3 also r <= 2N/(N-2). */
std::pair<double, double> lr_norms(const ThetaFrame& frame,
                                   const HistoryAccumulators& acc, double r,
                                   const ModelParams& params,
                                   const BallGrid& ball);

struct SupSummary {
  double sup = 0.0;
  double s_at_sup = 0.0;
  std::string verdict;   ///< "bounded" | "growth detected" | "insufficient data"
  double growth_rate = 0.0;  ///< fitted d log(q)/ds when growth detected
};

/** Running max plus the boundedness heuristic: max over the last half of
 *  the s-range within 1.1x of the first half's max. A heuristic label,
 *  never a claim about the infinite-s supremum. */
SupSummary sup_tracker(const std::vector<double>& s,
                       const std::vector<double>& q);

}  // namespace blowlab

#endif  // BLOWLAB_BOUNDS_HPP
