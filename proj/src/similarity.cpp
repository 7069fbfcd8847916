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

#include "blowlab/similarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

// Exponential-moment weights over one interval: for x = gamma*ds,
//   int_{s1}^{s1+ds} e^{gamma tau} dtau          = e^{gamma s1} ds phi0(x)
//   int_{s1}^{s1+ds} e^{gamma tau} (tau-s1)/ds   = e^{gamma s1} ds phi1(x)
// so a linearly interpolated factor f integrates to
//   f1 * (M0 - M1) + f2 * M1.
double phi0(double x) {
  if (std::abs(x) < 1e-4) {
    return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  }
  return std::expm1(x) / x;
}

double phi1(double x) {
  if (std::abs(x) < 1e-4) {
    return 0.5 + x * (1.0 / 3.0 + x * (0.125 + x / 30.0));
  }
  return (std::expm1(x) * (x - 1.0) + x) / (x * x);
}

struct Moments {
  double w_prev;  // multiplies the integrand at the interval start
  double w_next;  // multiplies the integrand at the interval end
};

Moments interval_moments(double gamma, double s1, double ds) {
  const double x = gamma * ds;
  const double scale = std::exp(gamma * s1) * ds;
  const double m0 = scale * phi0(x);
  const double m1 = scale * phi1(x);
  return {m0 - m1, m1};
}

void check_ball_fits(const SimilarityParams& sim, const GridSpec& grid) {
  for (int d = 0; d < grid.dim; ++d) {
    if (std::abs(sim.a[d]) + 1.0 > grid.L + 1e-12) {
      throw std::invalid_argument(
          "similarity: unit ball around the center leaves the solver domain");
    }
  }
}

}  // namespace

double SimilarityParams::s0() const { return -std::log(T_prime); }

double SimilarityParams::s_valid_max(double T) const {
  if (T_prime <= T) return std::numeric_limits<double>::infinity();
  return -std::log(T_prime - T);
}

HistoryAccumulators::HistoryAccumulators(const ThetaFrame& first,
                                         const ModelParams& params,
                                         const BallGrid& ball)
    : dim_(ball.dim), beta_(params.beta), s0_(first.s), s_last_(first.s) {
  const std::size_t n = ball.size();
  if (first.theta.size() != n)
    throw std::invalid_argument("HistoryAccumulators: frame/grid mismatch");
  P1_.assign(n, 0.0);
  P3_.assign(n, 0.0);
  P4_.assign(n, 0.0);
  P5_.assign(n, 0.0);
  for (int d = 0; d < dim_; ++d) P2_.comp[d].assign(n, 0.0);
  theta_prev_ = first.theta;
  grad_prev_ = first.grad;
}

void HistoryAccumulators::update(const ThetaFrame& frame, double ds) {
  if (!(ds > 0.0)) throw std::invalid_argument("update_history: ds > 0");
  if (std::abs(frame.s - (s_last_ + ds)) > 1e-9 * (1.0 + std::abs(frame.s)))
    throw std::invalid_argument("update_history: out-of-order frame");

  const double gamma_g = beta_ + 1.0;
  const double gamma_g2 = beta_ - 1.0;
  const auto m2 = interval_moments(gamma_g2, s_last_, ds);
  const auto mg = interval_moments(gamma_g, s_last_, ds);

  const std::size_t n = P1_.size();
  for (std::size_t i = 0; i < n; ++i) {
    double gp2 = 0.0, gn2 = 0.0;
    for (int d = 0; d < dim_; ++d) {
      const double a = grad_prev_.comp[d][i];
      const double b = frame.grad.comp[d][i];
      gp2 += a * a;
      gn2 += b * b;
      P2_.comp[d][i] += m2.w_prev * a + m2.w_next * b;
    }
    const double tp = theta_prev_[i];
    const double tn = frame.theta[i];
    P1_[i] += m2.w_prev * gp2 + m2.w_next * gn2;
    P3_[i] += m2.w_prev * tp * tp + m2.w_next * tn * tn;
    P4_[i] += m2.w_prev * tp + m2.w_next * tn;
    P5_[i] += mg.w_prev * tp * tp + mg.w_next * tn * tn;
  }
  G2int_ += m2.w_prev + m2.w_next;
  Gint_ += mg.w_prev + mg.w_next;

  s_last_ = frame.s;
  theta_prev_ = frame.theta;
  grad_prev_ = frame.grad;
}

HistoryAccumulators direct_history(const std::vector<ThetaFrame>& frames,
                                   const ModelParams& params,
                                   const BallGrid& ball) {
  if (frames.empty())
    throw std::invalid_argument("direct_history: no frames");
  HistoryAccumulators acc(frames.front(), params, ball);
  if (frames.size() == 1) return acc;

  // Same per-interval rule, but contributions summed newest-first so the
  // rounding order differs from the incremental path.
  const double gamma_g = params.beta + 1.0;
  const double gamma_g2 = params.beta - 1.0;
  const std::size_t n = ball.size();
  for (std::size_t k = frames.size() - 1; k >= 1; --k) {
    const ThetaFrame& a = frames[k - 1];
    const ThetaFrame& b = frames[k];
    const double ds = b.s - a.s;
    const auto m2 = interval_moments(gamma_g2, a.s, ds);
    const auto mg = interval_moments(gamma_g, a.s, ds);
    for (std::size_t i = 0; i < n; ++i) {
      double gp2 = 0.0, gn2 = 0.0;
      for (int d = 0; d < ball.dim; ++d) {
        const double ga = a.grad.comp[d][i];
        const double gb = b.grad.comp[d][i];
        gp2 += ga * ga;
        gn2 += gb * gb;
        acc.P2_.comp[d][i] += m2.w_prev * ga + m2.w_next * gb;
      }
      acc.P1_[i] += m2.w_prev * gp2 + m2.w_next * gn2;
      acc.P3_[i] += m2.w_prev * a.theta[i] * a.theta[i] +
                    m2.w_next * b.theta[i] * b.theta[i];
      acc.P4_[i] += m2.w_prev * a.theta[i] + m2.w_next * b.theta[i];
      acc.P5_[i] += mg.w_prev * a.theta[i] * a.theta[i] +
                    mg.w_next * b.theta[i] * b.theta[i];
    }
    acc.G2int_ += m2.w_prev + m2.w_next;
    acc.Gint_ += mg.w_prev + mg.w_next;
  }
  acc.s_last_ = frames.back().s;
  acc.theta_prev_ = frames.back().theta;
  acc.grad_prev_ = frames.back().grad;
  return acc;
}

ThetaFrame transform_snapshot(const FieldSnapshot& snap,
                              const SimilarityParams& sim,
                              const ModelParams& params, const BallGrid& ball,
                              const GridSpec& grid) {
  if (!(snap.t < sim.T_prime))
    throw std::invalid_argument("transform_snapshot: t >= T'");
  check_ball_fits(sim, grid);

  const double tau = sim.T_prime - snap.t;
  ThetaFrame frame;
  frame.s = -std::log(tau);
  frame.t = snap.t;
  const double scale = std::pow(tau, params.beta);

  const std::size_t n = ball.size();
  frame.theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ball.point(i);
    for (int d = 0; d < grid.dim; ++d) x[d] += sim.a[d];
    frame.theta[i] = scale * interpolate(grid, snap.ut, x);
  }
  ball_gradient(ball, frame.theta, frame.grad);
  return frame;
}

Theta00 make_theta00(const Field& u, double t_base,
                     const SimilarityParams& sim, const ModelParams& params,
                     const BallGrid& ball, const GridSpec& grid) {
  if (!(t_base < sim.T_prime))
    throw std::invalid_argument("make_theta00: t_base >= T'");
  check_ball_fits(sim, grid);

  const double tau = sim.T_prime - t_base;
  Theta00 out;
  out.s_base = -std::log(tau);
  const double scale = std::pow(tau, params.beta + 1.0);

  const std::size_t n = ball.size();
  out.field.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = ball.point(i);
    for (int d = 0; d < grid.dim; ++d) x[d] += sim.a[d];
    out.field[i] = scale * interpolate(grid, u, x);
  }
  ball_gradient(ball, out.field, out.grad);
  ball_laplacian(ball, out.field, out.lap);
  return out;
}

ConvFields conv_h2(const HistoryAccumulators& acc, double s,
                   const ModelParams& params) {
  if (std::abs(s - acc.s_last()) > 1e-9 * (1.0 + std::abs(s)))
    throw std::invalid_argument("conv_h2: accumulators not current at s");
  const double h2 = kernels(params, s).h2;
  ConvFields out;
  const std::size_t n = acc.P4().size();
  out.conv_theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.conv_theta[i] = h2 * acc.P4()[i];
  for (int d = 0; d < params.dim; ++d) {
    out.conv_grad.comp[d].resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out.conv_grad.comp[d][i] = h2 * acc.P2().comp[d][i];
  }
  return out;
}

double residual_1_7(const ThetaFrame& prev, const ThetaFrame& mid,
                    const ThetaFrame& next, const HistoryAccumulators& acc,
                    const Theta00& theta00, const ModelParams& params,
                    const BallGrid& ball) {
  if (ball.nz < 8)
    throw std::invalid_argument("residual_1_7: nz >= 8 required");
  if (std::abs(acc.s_last() - mid.s) > 1e-9 * (1.0 + std::abs(mid.s)))
    throw std::invalid_argument("residual_1_7: accumulators not at mid frame");
  const double ds_lo = mid.s - prev.s;
  const double ds_hi = next.s - mid.s;
  if (!(ds_lo > 0.0) || std::abs(ds_hi - ds_lo) > 1e-9)
    throw std::invalid_argument("residual_1_7: frames not uniformly spaced");

  const double g = kernels(params, mid.s).g;
  const double g_base = kernels(params, acc.s0()).g;
  const double inv_2ds = 1.0 / (ds_lo + ds_hi);

  BallField hist_lap;
  ball_divergence(ball, acc.P2(), hist_lap);

  const std::size_t n = ball.size();
  BallField res(n, 0.0), rhs_term(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta_s = (next.theta[i] - prev.theta[i]) * inv_2ds;
    const double nonlin = g * signed_power(mid.theta[i], params.p);
    res[i] = g * theta_s + params.beta * g * mid.theta[i] - hist_lap[i] -
             g_base * theta00.lap[i] - nonlin;
    rhs_term[i] = nonlin;
  }

  // Keep to points where every stencil is centered.
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = ball.unravel(i);
    for (int d = 0; d < ball.dim; ++d) {
      if (idx[d] == 0 || idx[d] == ball.nz - 1) {
        res[i] = 0.0;
        rhs_term[i] = 0.0;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    res[i] *= res[i];
    rhs_term[i] *= rhs_term[i];
  }
  const double num = std::sqrt(ball_quadrature(res, params.alpha, ball));
  const double den = std::sqrt(ball_quadrature(rhs_term, params.alpha, ball));
  if (num == 0.0) return 0.0;
  return num / std::max(den, 1e-300);
}

}  // namespace blowlab
