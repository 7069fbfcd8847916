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

#ifndef BLOWLAB_SIMILARITY_HPP
#define BLOWLAB_SIMILARITY_HPP

#include <array>
#include <vector>

#include "blowlab/ball.hpp"
#include "blowlab/model.hpp"
#include "blowlab/solver.hpp"

namespace blowlab {

/** Center and scaling time of the similarity frame. */
struct SimilarityParams {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  double T_prime = 1.0;

  double s0() const;              ///< -log T'
  double s_valid_max(double T) const;  ///< frame bound when T' > T
};

/** theta(s,.) and grad theta(s,.) on the ball grid at one similarity time. */
struct ThetaFrame {
  double s = 0.0;
  double t = 0.0;
  BallField theta;
  BallVectorField grad;
};

/**
 * Running history integrals from the frame base s0 to s_last.
 *
 * Increments integrate the exponential kernel exactly against linearly
 * interpolated frame data, so the scalar integrals G2int and Gint reduce
 * to their closed forms and no error compounds from the kernel growth.
 */
class HistoryAccumulators {
 public:
  HistoryAccumulators(const ThetaFrame& first, const ModelParams& params,
                      const BallGrid& ball);

  double s0() const { return s0_; }
  double s_last() const { return s_last_; }

  const BallField& P1() const { return P1_; }        ///< int g2 |grad theta|^2
  const BallVectorField& P2() const { return P2_; }  ///< int g2 grad theta
  const BallField& P3() const { return P3_; }        ///< int g2 theta^2
  const BallField& P4() const { return P4_; }        ///< int g2 theta
  const BallField& P5() const { return P5_; }        ///< int g  theta^2
  double G2int() const { return G2int_; }            ///< int g2
  double Gint() const { return Gint_; }              ///< int g

  void update(const ThetaFrame& frame, double ds);

 private:
  friend HistoryAccumulators direct_history(
      const std::vector<ThetaFrame>& frames, const ModelParams& params,
      const BallGrid& ball);

  int dim_;
  double beta_;
  double s0_ = 0.0;
  double s_last_ = 0.0;
  BallField P1_, P3_, P4_, P5_;
  BallVectorField P2_;
  double G2int_ = 0.0;
  double Gint_ = 0.0;
  BallField theta_prev_;
  BallVectorField grad_prev_;
};

/** update_history per the uniform-s schedule; throws on out-of-order frames. */
inline void update_history(HistoryAccumulators& acc, const ThetaFrame& frame,
                           double ds) {
  acc.update(frame, ds);
}

/** Stored-history evaluation of the same rule, for cross-checking the
 *  incremental path (per-interval contributions summed newest first). */
HistoryAccumulators direct_history(const std::vector<ThetaFrame>& frames,
                                   const ModelParams& params,
                                   const BallGrid& ball);

/** theta(s,z) = (T'-t)^beta ut(a+z), s = -log(T'-t); grad by centered
 *  differences on the ball grid. */
ThetaFrame transform_snapshot(const FieldSnapshot& snap,
                              const SimilarityParams& sim,
                              const ModelParams& params, const BallGrid& ball,
                              const GridSpec& grid);

/** Rescaled displacement entering the boundary energy terms and the
 *  transformed equation's source. */
struct Theta00 {
  BallField field;       ///< (T'-t_base)^{beta+1} u(a+z, t_base)
  BallVectorField grad;
  BallField lap;
  double s_base = 0.0;   ///< similarity time of the base snapshot
};

/**
 * Builds theta00 from the displacement field at the frame base time.
 * With t_base = 0 this is (T')^{beta+1} u0(a+z); for a later base the
 * pre-base history folds into u(t_base), which keeps the transformed
 * equation exact for frames starting at any s0.
 */
Theta00 make_theta00(const Field& u, double t_base,
                     const SimilarityParams& sim, const ModelParams& params,
                     const BallGrid& ball, const GridSpec& grid);

/** (h2*theta)(s) = h2(s) P4 and (h2*grad theta)(s) = h2(s) P2. */
struct ConvFields {
  BallField conv_theta;
  BallVectorField conv_grad;
};
ConvFields conv_h2(const HistoryAccumulators& acc, double s,
                   const ModelParams& params);

/**
 * rho^alpha-weighted L2 residual of the transformed equation
 *   g(s) theta_s + beta g(s) theta - int g2 Lap(theta) - g(s0) Lap(theta00)
 *     = g(s) |theta|^{p-1} theta
 * at the middle frame, normalized by the norm of the right side. The
 * history Laplacian is the divergence of P2 on the grid interior.
 */
double residual_1_7(const ThetaFrame& prev, const ThetaFrame& mid,
                    const ThetaFrame& next, const HistoryAccumulators& acc,
                    const Theta00& theta00, const ModelParams& params,
                    const BallGrid& ball);

}  // namespace blowlab

#endif  // BLOWLAB_SIMILARITY_HPP
