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

#ifndef BLOWLAB_GRID_HPP
#define BLOWLAB_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace blowlab {

using Field = std::vector<double>;

/** Uniform periodic grid on [-L, L)^N, nx points per dimension. */
struct GridSpec {
  int dim = 1;
  double L = 4.0;
  int nx = 128;

  GridSpec() = default;
  GridSpec(int dim_, double L_, int nx_);

  double dx() const { return 2.0 * L / nx; }
  std::size_t size() const;
  double coord(int i) const { return -L + i * dx(); }

  std::size_t index(const std::array<int, 3>& idx) const;
  std::array<int, 3> unravel(std::size_t flat) const;
  int wrap(int i) const {
    int m = i % nx;
    return m < 0 ? m + nx : m;
  }
};

// Periodic second-order centered stencils.
void laplacian(const GridSpec& g, const Field& u, Field& out, int order = 2);
void derivative(const GridSpec& g, const Field& u, int axis, Field& out);
void second_derivative(const GridSpec& g, const Field& u, int axis_a,
                       int axis_b, Field& out);

/** Multilinear periodic interpolation at an arbitrary point. */
double interpolate(const GridSpec& g, const Field& u,
                   const std::array<double, 3>& x);

double max_abs(const Field& u);
bool all_finite(const Field& u);

}  // namespace blowlab

#endif  // BLOWLAB_GRID_HPP
