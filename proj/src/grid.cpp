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

#include "blowlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace blowlab {

GridSpec::GridSpec(int dim_, double L_, int nx_) : dim(dim_), L(L_), nx(nx_) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("GridSpec: N in {1,2,3}");
  if (!(L >= 2.0)) throw std::invalid_argument("GridSpec: L >= 2 required");
  if (nx < 16) throw std::invalid_argument("GridSpec: nx >= 16 required");
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(nx);
  return n;
}

std::size_t GridSpec::index(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim; ++d) {
    flat = flat * nx + static_cast<std::size_t>(wrap(idx[d]));
  }
  return flat;
}

std::array<int, 3> GridSpec::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % nx);
    flat /= nx;
  }
  return idx;
}

namespace {

// Strides of each axis in the row-major flat layout.
std::array<std::size_t, 3> strides(const GridSpec& g) {
  std::array<std::size_t, 3> s{0, 0, 0};
  std::size_t acc = 1;
  for (int d = g.dim - 1; d >= 0; --d) {
    s[d] = acc;
    acc *= g.nx;
  }
  return s;
}

// flat index of the neighbor shifted by `off` along `axis`, with wrap.
inline std::size_t shifted(const GridSpec& g, std::size_t flat,
                           const std::array<std::size_t, 3>& st, int axis,
                           int off) {
  const std::size_t stride = st[axis];
  const int i = static_cast<int>((flat / stride) % g.nx);
  const int j = g.wrap(i + off);
  return flat + (static_cast<std::size_t>(j) - i) * stride;
}

}  // namespace

void laplacian(const GridSpec& g, const Field& u, Field& out, int order) {
  if (order != 2 && order != 4)
    throw std::invalid_argument("laplacian: order must be 2 or 4");
  const auto st = strides(g);
  const std::size_t n = g.size();
  out.assign(n, 0.0);
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());
  for (std::size_t f = 0; f < n; ++f) {
    double acc = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double up = u[shifted(g, f, st, d, +1)];
      const double dn = u[shifted(g, f, st, d, -1)];
      if (order == 2) {
        acc += up - 2.0 * u[f] + dn;
      } else {
        const double up2 = u[shifted(g, f, st, d, +2)];
        const double dn2 = u[shifted(g, f, st, d, -2)];
        acc += (-up2 + 16.0 * up - 30.0 * u[f] + 16.0 * dn - dn2) / 12.0;
      }
    }
    out[f] = acc * inv_dx2;
  }
}

void derivative(const GridSpec& g, const Field& u, int axis, Field& out) {
  const auto st = strides(g);
  const std::size_t n = g.size();
  out.assign(n, 0.0);
  const double inv_2dx = 0.5 / g.dx();
  for (std::size_t f = 0; f < n; ++f) {
    out[f] = (u[shifted(g, f, st, axis, +1)] - u[shifted(g, f, st, axis, -1)]) *
             inv_2dx;
  }
}

void second_derivative(const GridSpec& g, const Field& u, int axis_a,
                       int axis_b, Field& out) {
  const auto st = strides(g);
  const std::size_t n = g.size();
  out.assign(n, 0.0);
  const double dx = g.dx();
  if (axis_a == axis_b) {
    const double inv_dx2 = 1.0 / (dx * dx);
    for (std::size_t f = 0; f < n; ++f) {
      out[f] = (u[shifted(g, f, st, axis_a, +1)] - 2.0 * u[f] +
                u[shifted(g, f, st, axis_a, -1)]) *
               inv_dx2;
    }
  } else {
    const double inv_4dx2 = 0.25 / (dx * dx);
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t pp = shifted(g, shifted(g, f, st, axis_a, +1), st, axis_b, +1);
      const std::size_t pm = shifted(g, shifted(g, f, st, axis_a, +1), st, axis_b, -1);
      const std::size_t mp = shifted(g, shifted(g, f, st, axis_a, -1), st, axis_b, +1);
      const std::size_t mm = shifted(g, shifted(g, f, st, axis_a, -1), st, axis_b, -1);
      out[f] = (u[pp] - u[pm] - u[mp] + u[mm]) * inv_4dx2;
    }
  }
}

double interpolate(const GridSpec& g, const Field& u,
                   const std::array<double, 3>& x) {
  const double dx = g.dx();
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int d = 0; d < g.dim; ++d) {
    const double c = (x[d] + g.L) / dx;
    const double fl = std::floor(c);
    base[d] = static_cast<int>(fl);
    frac[d] = c - fl;
  }
  double value = 0.0;
  const int corners = 1 << g.dim;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::array<int, 3> idx = base;
    for (int d = 0; d < g.dim; ++d) {
      if (c & (1 << d)) {
        idx[d] += 1;
        w *= frac[d];
      } else {
        w *= 1.0 - frac[d];
      }
    }
    value += w * u[g.index(idx)];
  }
  return value;
}

double max_abs(const Field& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Field& u) {
  for (double v : u) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace blowlab
