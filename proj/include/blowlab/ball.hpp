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

#ifndef BLOWLAB_BALL_HPP
#define BLOWLAB_BALL_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "blowlab/grid.hpp"

namespace blowlab {

/**
 * Tensor grid on [-1,1]^N with the unit-ball mask and rho(z) = 1 - |z|^2.
 *
 * Quadrature is the tensor trapezoid rule restricted to the mask; since the
 * rho^w weights vanish at the ball boundary for w > 0, the curved-boundary
 * error stays at the level of the smooth-integrand trapezoid error.
 */
struct BallGrid {
  int dim = 1;
  int nz = 33;  ///< points per dimension, endpoints at -1 and +1

  std::vector<double> rho;        ///< 1 - |z|^2 per point (cube layout)
  std::vector<std::uint8_t> mask; ///< 1 where |z| <= 1
  std::vector<double> quad_w;     ///< tensor trapezoid weight * dz^N * mask
  std::vector<double> quad_w_half;///< same for the ball of radius 1/2
  std::vector<double> z2;         ///< |z|^2 per point

  BallGrid(int dim_, int nz_);

  double dz() const { return 2.0 / (nz - 1); }
  std::size_t size() const;
  double coord(int i) const {
    return static_cast<double>(2 * i - (nz - 1)) / (nz - 1);
  }
  std::size_t index(const std::array<int, 3>& idx) const;
  std::array<int, 3> unravel(std::size_t flat) const;
  std::array<double, 3> point(std::size_t flat) const;
};

using BallField = std::vector<double>;

/** Gradient of the N components, one field each. */
struct BallVectorField {
  std::array<BallField, 3> comp;
};

/** sum of f * rho^weight_exp over the masked ball; weight_exp >= 0. */
double ball_quadrature(const BallField& f, double weight_exp,
                       const BallGrid& ball);

/** Unweighted quadrature over the ball of radius 1/2. */
double half_ball_quadrature(const BallField& f, const BallGrid& ball);

/** Centered differences inside the cube, one-sided second order on faces. */
void ball_gradient(const BallGrid& ball, const BallField& f,
                   BallVectorField& out);
void ball_divergence(const BallGrid& ball, const BallVectorField& f,
                     BallField& out);
void ball_laplacian(const BallGrid& ball, const BallField& f, BallField& out);

}  // namespace blowlab

#endif  // BLOWLAB_BALL_HPP
