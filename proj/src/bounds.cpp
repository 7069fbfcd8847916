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

#include "blowlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace blowlab {

Thm11Parts thm11_quantity(const ThetaFrame& frame,
                          const HistoryAccumulators& acc,
                          const ModelParams& params, const BallGrid& ball) {
  const ConvFields conv = conv_h2(acc, frame.s, params);
  const double e2s = std::exp(-2.0 * frame.s);
  const std::size_t n = ball.size();
  BallField work(n);

  Thm11Parts out;
  for (std::size_t i = 0; i < n; ++i) work[i] = frame.theta[i] * frame.theta[i];
  out.p31 = ball_quadrature(work, 0.0, ball);

  for (std::size_t i = 0; i < n; ++i) {
    double acc2 = 0.0;
    for (int d = 0; d < ball.dim; ++d) {
      const double c = conv.conv_grad.comp[d][i];
      acc2 += c * c;
    }
    work[i] = acc2;
  }
  out.p32 = e2s * ball_quadrature(work, 0.0, ball);

  for (std::size_t i = 0; i < n; ++i)
    work[i] = conv.conv_theta[i] * conv.conv_theta[i];
  out.p33 = e2s * ball_quadrature(work, 0.0, ball);
  return out;
}

Thm12Parts thm12_quantity(const FieldSnapshot& snap, double T,
                          const std::array<double, 3>& a,
                          const ModelParams& params, const GridSpec& grid,
                          const BallGrid& ball) {
  Thm12Parts out;
  if (!(snap.t >= T * (1.0 - std::exp(-1.0)) && snap.t < T)) {
    out.in_window = false;
    return out;  // out of the theorem's window: skipped, not failed
  }
  out.in_window = true;

  for (int d = 0; d < grid.dim; ++d) {
    if (std::abs(a[d]) + 1.0 > grid.L + 1e-12)
      throw std::invalid_argument("thm12_quantity: ball leaves the domain");
  }

  // Derivatives on the solver grid, then sampled on the ball. Hessian
  // entries enter with their full multiplicity (Frobenius norm).
  std::vector<Field> fields;  // u, grad u, Hessian entries, ut, grad ut
  std::vector<double> mult;
  fields.push_back(snap.u);
  mult.push_back(1.0);
  Field tmp;
  for (int d = 0; d < grid.dim; ++d) {
    derivative(grid, snap.u, d, tmp);
    fields.push_back(tmp);
    mult.push_back(1.0);
  }
  for (int d = 0; d < grid.dim; ++d) {
    for (int e = d; e < grid.dim; ++e) {
      second_derivative(grid, snap.u, d, e, tmp);
      fields.push_back(tmp);
      mult.push_back(d == e ? 1.0 : 2.0);
    }
  }
  const std::size_t split = fields.size();  // u-part fields end here
  fields.push_back(snap.ut);
  mult.push_back(1.0);
  for (int d = 0; d < grid.dim; ++d) {
    derivative(grid, snap.ut, d, tmp);
    fields.push_back(tmp);
    mult.push_back(1.0);
  }

  const std::size_t n = ball.size();
  BallField sq_u(n, 0.0), sq_ut(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (ball.quad_w[i] == 0.0) continue;
    auto x = ball.point(i);
    for (int d = 0; d < grid.dim; ++d) x[d] += a[d];
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const double v = interpolate(grid, fields[f], x);
      (f < split ? sq_u[i] : sq_ut[i]) += mult[f] * v * v;
    }
  }
  const double scale = std::pow(T - snap.t, 2.0 * params.beta);
  out.u_part = scale * ball_quadrature(sq_u, 0.0, ball);
  out.ut_part = scale * ball_quadrature(sq_ut, 0.0, ball);
  return out;
}

WindowIntegrands window_integrands(const ThetaFrame& frame,
                                   const BallField& theta_s,
                                   const ModelParams& params,
                                   const BallGrid& ball) {
  const auto k = kernels(params, frame.s);
  const std::size_t n = ball.size();
  BallField no_grad(n), grad2(n), full(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = frame.theta[i];
    double g2 = 0.0;
    for (int d = 0; d < ball.dim; ++d) {
      g2 += frame.grad.comp[d][i] * frame.grad.comp[d][i];
    }
    const double ts2 = theta_s[i] * theta_s[i];
    const double pow_term = std::pow(std::abs(th), params.p + 1.0);
    no_grad[i] = ts2 + pow_term + th * th;
    grad2[i] = g2;
    full[i] = no_grad[i] + g2;
  }
  WindowIntegrands out;
  out.s = frame.s;
  out.w2_g = k.g * ball_quadrature(no_grad, params.alpha, ball);
  out.w2_g2 = k.g2 * ball_quadrature(grad2, params.alpha, ball);
  out.w3 = ball_quadrature(full, params.alpha, ball);
  out.w4 = half_ball_quadrature(full, ball);
  return out;
}

std::vector<WindowReport> cor31_windows(
    const std::vector<WindowIntegrands>& series) {
  std::vector<WindowReport> out;
  if (series.size() < 2) return out;
  const double ds = series[1].s - series[0].s;
  if (!(ds > 0.0)) throw std::invalid_argument("cor31_windows: bad s grid");
  const int m = static_cast<int>(std::lround(1.0 / ds));
  if (m < 1 || std::abs(m * ds - 1.0) > 1e-6) return out;

  for (std::size_t k = 0; k + m < series.size(); ++k) {
    WindowReport w;
    w.s = series[k].s;
    for (std::size_t j = k; j <= k + static_cast<std::size_t>(m); ++j) {
      const double wt =
          (j == k || j == k + static_cast<std::size_t>(m)) ? 0.5 * ds : ds;
      w.w2 += wt * (series[j].w2_g + series[j].w2_g2);
      w.w3 += wt * series[j].w3;
      w.w4 += wt * series[j].w4;
    }
    out.push_back(w);
  }
  return out;
}

std::pair<double, double> lr_norms(const ThetaFrame& frame,
                                   const HistoryAccumulators& acc, double r,
                                   const ModelParams& params,
                                   const BallGrid& ball) {
  if (r < 1.0) throw std::invalid_argument("lr_norms: r >= 1 required");
  if (params.dim >= 3 &&
      r > 2.0 * params.dim / (params.dim - 2.0) + 1e-12)
    throw std::invalid_argument("lr_norms: r beyond 2N/(N-2)");

  const ConvFields conv = conv_h2(acc, frame.s, params);
  const std::size_t n = ball.size();
  BallField work(n);
  for (std::size_t i = 0; i < n; ++i)
    work[i] = std::pow(std::abs(frame.theta[i]), r);
  const double lr_theta = std::pow(ball_quadrature(work, 0.0, ball), 1.0 / r);
  for (std::size_t i = 0; i < n; ++i)
    work[i] = std::pow(std::abs(conv.conv_theta[i]), r);
  const double lr_conv =
      std::exp(-frame.s) * std::pow(ball_quadrature(work, 0.0, ball), 1.0 / r);
  return {lr_theta, lr_conv};
}

SupSummary sup_tracker(const std::vector<double>& s,
                       const std::vector<double>& q) {
  if (s.size() != q.size() || s.empty())
    throw std::invalid_argument("sup_tracker: bad series");
  SupSummary out;
  out.sup = q[0];
  out.s_at_sup = s[0];
  for (std::size_t i = 1; i < q.size(); ++i) {
    if (q[i] > out.sup) {
      out.sup = q[i];
      out.s_at_sup = s[i];
    }
  }
  if (q.size() < 4) {
    out.verdict = "insufficient data";
    return out;
  }

  const std::size_t half = q.size() / 2;
  double max_first = q[0], max_last = q[half];
  for (std::size_t i = 0; i < half; ++i) max_first = std::max(max_first, q[i]);
  for (std::size_t i = half; i < q.size(); ++i)
    max_last = std::max(max_last, q[i]);

  if (max_last <= 1.1 * max_first) {
    out.verdict = "bounded";
    return out;
  }
  out.verdict = "growth detected";

  // log-linear fit for the growth rate
  double sbar = 0.0, lbar = 0.0;
  std::vector<double> logs(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    logs[i] = std::log(std::max(q[i], 1e-300));
    sbar += s[i];
    lbar += logs[i];
  }
  sbar /= q.size();
  lbar /= q.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sxx += (s[i] - sbar) * (s[i] - sbar);
    sxy += (s[i] - sbar) * (logs[i] - lbar);
  }
  out.growth_rate = sxx > 0.0 ? sxy / sxx : 0.0;
  return out;
}

}  // namespace blowlab
