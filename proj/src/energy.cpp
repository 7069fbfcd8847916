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

#include "blowlab/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

double dot_grad(const BallVectorField& a, const BallVectorField& b, int dim,
                std::size_t i) {
  double acc = 0.0;
  for (int d = 0; d < dim; ++d) acc += a.comp[d][i] * b.comp[d][i];
  return acc;
}

double z_dot(const BallGrid& ball, const BallVectorField& v, std::size_t i) {
  const auto z = ball.point(i);
  double acc = 0.0;
  for (int d = 0; d < ball.dim; ++d) acc += z[d] * v.comp[d][i];
  return acc;
}

}  // namespace

EnergyBreakdown energy_terms(const ThetaFrame& frame,
                             const HistoryAccumulators& acc,
                             const Theta00& theta00, const ModelParams& params,
                             const BallGrid& ball, T3Convention convention) {
  if (std::abs(acc.s_last() - frame.s) > 1e-9 * (1.0 + std::abs(frame.s)))
    throw std::invalid_argument("energy_terms: accumulators not at frame.s");
  if (frame.theta.size() != ball.size())
    throw std::invalid_argument("energy_terms: frame/grid mismatch");

  const double beta = params.beta;
  const double alpha = params.alpha;
  const double g = kernels(params, frame.s).g;
  const double g_base = kernels(params, acc.s0()).g;
  const std::size_t n = ball.size();
  const int dim = ball.dim;

  BallField work(n);

  EnergyBreakdown out;
  out.s = frame.s;

  // T1, T2: instantaneous terms.
  for (std::size_t i = 0; i < n; ++i) work[i] = frame.theta[i] * frame.theta[i];
  out.T[0] = 0.5 * beta * g * ball_quadrature(work, alpha, ball);
  for (std::size_t i = 0; i < n; ++i)
    work[i] = std::pow(std::abs(frame.theta[i]), params.p + 1.0);
  out.T[1] = g / (params.p + 1.0) * ball_quadrature(work, alpha, ball);

  // T3: gradient-history bracket, expanded onto P1 and P2.
  if (convention == T3Convention::as_stated) {
    for (std::size_t i = 0; i < n; ++i) {
      work[i] = 2.0 * acc.P1()[i] - dot_grad(frame.grad, acc.P2(), dim, i);
    }
    out.T[2] = ball_quadrature(work, alpha, ball);
  } else {
    // |2 grad(tau) - grad(s)/2|^2 with its |grad(s)|^2 counterweight.
    for (std::size_t i = 0; i < n; ++i) {
      const double gg = dot_grad(frame.grad, frame.grad, dim, i);
      work[i] = 0.5 * (4.0 * acc.P1()[i] -
                       2.0 * dot_grad(frame.grad, acc.P2(), dim, i) +
                       0.25 * acc.G2int() * gg) -
                0.125 * acc.G2int() * gg;
    }
    out.T[2] = ball_quadrature(work, alpha, ball);
  }

  // T4: [N rho - 2(alpha-1) |z|^2] rho^{alpha-2} against P3 - 2 theta P4.
  for (std::size_t i = 0; i < n; ++i) {
    const double bracket = acc.P3()[i] - 2.0 * frame.theta[i] * acc.P4()[i];
    const double w = dim * ball.rho[i] - 2.0 * (alpha - 1.0) * ball.z2[i];
    work[i] = alpha * bracket * w;
  }
  out.T[3] = ball_quadrature(work, alpha - 2.0, ball);

  // T5: g(tau) e^{-2tau} = g2(tau) collapses the cross term onto P4.
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = alpha * (acc.P5()[i] -
                       2.0 * z_dot(ball, frame.grad, i) * acc.P4()[i]);
  }
  out.T[4] = ball_quadrature(work, alpha - 1.0, ball);

  // T6, T7: boundary terms from theta00.
  for (std::size_t i = 0; i < n; ++i) {
    const double cross = dot_grad(frame.grad, theta00.grad, dim, i);
    const double g00 = dot_grad(theta00.grad, theta00.grad, dim, i);
    work[i] = 2.0 * cross + g00;
  }
  out.T[5] = 0.5 * g_base * ball_quadrature(work, alpha, ball);
  for (std::size_t i = 0; i < n; ++i) {
    const double zg = z_dot(ball, theta00.grad, i);
    work[i] = alpha * (zg * zg - 2.0 * frame.theta[i] * zg);
  }
  out.T[6] = g_base * ball_quadrature(work, alpha - 1.0, ball);

  out.E = out.T[0] - out.T[1] - out.T[2] - out.T[3] - out.T[4] + out.T[5] +
          out.T[6];
  return out;
}

DissipationRhs dissipation_rhs(const ThetaFrame& frame,
                               const BallField& theta_s,
                               const ModelParams& params,
                               const BallGrid& ball) {
  if (theta_s.size() != ball.size())
    throw std::invalid_argument("dissipation_rhs: theta_s missing");

  const double beta = params.beta;
  const double alpha = params.alpha;
  const auto k = kernels(params, frame.s);
  const std::size_t n = ball.size();
  BallField work(n);

  DissipationRhs out;
  out.s = frame.s;

  for (std::size_t i = 0; i < n; ++i)
    work[i] = std::pow(std::abs(frame.theta[i]), params.p + 1.0);
  out.terms[0] = -(beta + 1.0) / (params.p + 1.0) * k.g *
                 ball_quadrature(work, alpha, ball);

  for (std::size_t i = 0; i < n; ++i) work[i] = theta_s[i] * theta_s[i];
  out.terms[1] = -k.g * ball_quadrature(work, alpha, ball);

  for (std::size_t i = 0; i < n; ++i) work[i] = frame.theta[i] * frame.theta[i];
  out.terms[2] = -(alpha - 0.5 * beta * (beta + 1.0)) * k.g *
                 ball_quadrature(work, alpha, ball);

  for (std::size_t i = 0; i < n; ++i)
    work[i] = ball.z2[i] * frame.theta[i] * frame.theta[i];
  out.terms[3] = -alpha * k.g * ball_quadrature(work, alpha - 1.0, ball);

  for (std::size_t i = 0; i < n; ++i)
    work[i] = dot_grad(frame.grad, frame.grad, ball.dim, i);
  out.terms[4] = -k.g2 * ball_quadrature(work, alpha, ball);

  out.total = 0.0;
  for (double t : out.terms) out.total += t;
  return out;
}

DissipationCheck check_dissipation(const std::vector<double>& s,
                                   const std::vector<double>& E,
                                   const std::vector<DissipationRhs>& rhs,
                                   const ModelParams& params) {
  if (s.size() != E.size() || s.size() != rhs.size())
    throw std::invalid_argument("check_dissipation: series length mismatch");
  if (s.size() < 3)
    throw std::invalid_argument("check_dissipation: need >= 3 frames");
  const std::size_t n = s.size();
  const double ds = s[1] - s[0];

  DissipationCheck out;
  out.reports.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    DissipationReport rep;
    rep.s = s[k];
    if (k > 0) {
      const double tol = 1e-6 * (1.0 + std::abs(E[k - 1]));
      rep.monotone = E[k] <= E[k - 1] + tol;
      if (!rep.monotone) ++out.monotone_violations;
    }
    if (k > 0 && k + 1 < n) {
      rep.dE_fd = (E[k + 1] - E[k - 1]) / (s[k + 1] - s[k - 1]);
      rep.rhs = rhs[k].total;
      const double floor = 1e-12 * kernels(params, s[k]).g;
      rep.residual = std::abs(rep.dE_fd - rep.rhs) /
                     (std::abs(rep.rhs) + floor);
    } else {
      rep.dE_fd = std::numeric_limits<double>::quiet_NaN();
      rep.rhs = std::numeric_limits<double>::quiet_NaN();
      rep.residual = std::numeric_limits<double>::quiet_NaN();
    }
    out.reports.push_back(rep);
  }

  // Window form over [s, s+1] by the trapezoid rule; endpoints of the
  // series lack theta_s, so windows stay one frame inside.
  const int m = static_cast<int>(std::lround(1.0 / ds));
  if (m >= 2 && std::abs(m * ds - 1.0) < 1e-6) {
    for (std::size_t k = 1; k + m + 1 < n; ++k) {
      WindowIdentityReport w;
      w.s = s[k];
      w.dE_window = E[k + m] - E[k];
      double acc = 0.0, acc_frozen = 0.0;
      const double g_at_k = kernels(params, s[k]).g;
      for (std::size_t j = k; j <= k + static_cast<std::size_t>(m); ++j) {
        const double wt = (j == k || j == k + static_cast<std::size_t>(m))
                              ? 0.5 * ds
                              : ds;
        acc += wt * rhs[j].total;
        const double scale = g_at_k / kernels(params, s[j]).g;
        acc_frozen += wt * (rhs[j].terms[0] * scale + rhs[j].terms[1] * scale +
                            rhs[j].terms[2] + rhs[j].terms[3] + rhs[j].terms[4]);
      }
      w.int_rhs = acc;
      w.int_rhs_frozen = acc_frozen;
      const double floor = 1e-12 * g_at_k;
      w.residual = std::abs(w.dE_window - acc) / (std::abs(acc) + floor);
      w.residual_frozen =
          std::abs(w.dE_window - acc_frozen) / (std::abs(acc_frozen) + floor);
      out.windows.push_back(w);
    }
  }
  return out;
}

double flat_energy_oracle(const ModelParams& params, double kappa, double s,
                          double s0, double R_alpha, double R_alpha_m1) {
  const double beta = params.beta;
  const double g = std::exp((beta + 1.0) * s);
  const double gint =
      (std::exp((beta + 1.0) * s) - std::exp((beta + 1.0) * s0)) /
      (beta + 1.0);
  return g * kappa * kappa *
             (0.5 * beta -
              std::pow(std::abs(kappa), params.p - 1.0) / (params.p + 1.0)) *
             R_alpha -
         params.alpha * kappa * kappa * gint * R_alpha_m1;
}

}  // namespace blowlab
