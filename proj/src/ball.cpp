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

#include "blowlab/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace blowlab {

BallGrid::BallGrid(int dim_, int nz_) : dim(dim_), nz(nz_) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("BallGrid: N in {1,2,3}");
  if (nz < 5) throw std::invalid_argument("BallGrid: nz >= 5 required");

  const std::size_t n = size();
  rho.resize(n);
  mask.resize(n);
  z2.resize(n);
  quad_w.resize(n);
  quad_w_half.resize(n);

  const double cell = std::pow(dz(), dim);
  for (std::size_t f = 0; f < n; ++f) {
    const auto idx = unravel(f);
    double r2 = 0.0;
    double tensor = 1.0;
    for (int d = 0; d < dim; ++d) {
      const double zd = coord(idx[d]);
      r2 += zd * zd;
      if (idx[d] == 0 || idx[d] == nz - 1) tensor *= 0.5;
    }
    z2[f] = r2;
    rho[f] = 1.0 - r2;
    const bool inside = r2 <= 1.0 + 1e-14;
    mask[f] = inside ? 1 : 0;
    quad_w[f] = inside ? tensor * cell : 0.0;

    const bool inside_half = r2 <= 0.25 + 1e-14;
    double w_half = inside_half ? cell : 0.0;
    // points landing exactly on |z| = 1/2 count half
    if (inside_half && std::abs(std::sqrt(r2) - 0.5) < 1e-12) w_half *= 0.5;
    quad_w_half[f] = w_half;
  }
}

std::size_t BallGrid::size() const {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(nz);
  return n;
}

std::size_t BallGrid::index(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim; ++d) flat = flat * nz + static_cast<std::size_t>(idx[d]);
  return flat;
}

std::array<int, 3> BallGrid::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % nz);
    flat /= nz;
  }
  return idx;
}

std::array<double, 3> BallGrid::point(std::size_t flat) const {
  const auto idx = unravel(flat);
  std::array<double, 3> z{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) z[d] = coord(idx[d]);
  return z;
}

double ball_quadrature(const BallField& f, double weight_exp,
                       const BallGrid& ball) {
  if (weight_exp < 0.0)
    throw std::invalid_argument("ball_quadrature: weight_exp >= 0 required");
  if (f.size() != ball.size())
    throw std::invalid_argument("ball_quadrature: field size mismatch");
  double acc = 0.0;
  if (weight_exp == 0.0) {
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * ball.quad_w[i];
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (ball.quad_w[i] != 0.0)
        acc += f[i] * std::pow(ball.rho[i], weight_exp) * ball.quad_w[i];
    }
  }
  return acc;
}

double half_ball_quadrature(const BallField& f, const BallGrid& ball) {
  if (f.size() != ball.size())
    throw std::invalid_argument("half_ball_quadrature: field size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * ball.quad_w_half[i];
  return acc;
}

namespace {

std::array<std::size_t, 3> ball_strides(const BallGrid& b) {
  std::array<std::size_t, 3> s{0, 0, 0};
  std::size_t acc = 1;
  for (int d = b.dim - 1; d >= 0; --d) {
    s[d] = acc;
    acc *= b.nz;
  }
  return s;
}

// df/dz_d at every cube point: centered in the interior, second-order
// one-sided on the faces.
void axis_derivative(const BallGrid& b, const BallField& f, int axis,
                     BallField& out) {
  const auto st = ball_strides(b);
  const double inv_2dz = 0.5 / b.dz();
  out.assign(b.size(), 0.0);
  for (std::size_t flat = 0; flat < b.size(); ++flat) {
    const int i = static_cast<int>((flat / st[axis]) % b.nz);
    if (i == 0) {
      out[flat] = (-3.0 * f[flat] + 4.0 * f[flat + st[axis]] -
                   f[flat + 2 * st[axis]]) *
                  inv_2dz;
    } else if (i == b.nz - 1) {
      out[flat] = (3.0 * f[flat] - 4.0 * f[flat - st[axis]] +
                   f[flat - 2 * st[axis]]) *
                  inv_2dz;
    } else {
      out[flat] = (f[flat + st[axis]] - f[flat - st[axis]]) * inv_2dz;
    }
  }
}

void axis_second_derivative(const BallGrid& b, const BallField& f, int axis,
                            BallField& out) {
  const auto st = ball_strides(b);
  const double inv_dz2 = 1.0 / (b.dz() * b.dz());
  out.assign(b.size(), 0.0);
  for (std::size_t flat = 0; flat < b.size(); ++flat) {
    const int i = static_cast<int>((flat / st[axis]) % b.nz);
    std::size_t c = flat;
    if (i == 0) c = flat + st[axis];
    if (i == b.nz - 1) c = flat - st[axis];
    out[flat] =
        (f[c + st[axis]] - 2.0 * f[c] + f[c - st[axis]]) * inv_dz2;
  }
}

}  // namespace

void ball_gradient(const BallGrid& ball, const BallField& f,
                   BallVectorField& out) {
  for (int d = 0; d < ball.dim; ++d) axis_derivative(ball, f, d, out.comp[d]);
}

void ball_divergence(const BallGrid& ball, const BallVectorField& f,
                     BallField& out) {
  out.assign(ball.size(), 0.0);
  BallField tmp;
  for (int d = 0; d < ball.dim; ++d) {
    axis_derivative(ball, f.comp[d], d, tmp);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
  }
}

void ball_laplacian(const BallGrid& ball, const BallField& f, BallField& out) {
  out.assign(ball.size(), 0.0);
  BallField tmp;
  for (int d = 0; d < ball.dim; ++d) {
    axis_second_derivative(ball, f, d, tmp);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
  }
}

}  // namespace blowlab
