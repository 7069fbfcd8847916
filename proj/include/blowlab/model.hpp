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

#ifndef BLOWLAB_MODEL_HPP
#define BLOWLAB_MODEL_HPP

#include <string>

namespace blowlab {

/** Which admissibility branch a (N, p) pair satisfies. */
enum class AdmissibilityBranch {
  integer_subcritical,  ///< integer p with 1 < p < N/(N-2), N >= 3
  integer_low_dim,      ///< integer p >= 2, N <= 2
  regularity_real       ///< real p > 1, N <= 3
};

const char* branch_name(AdmissibilityBranch b);

/**
 * Model parameters for u_tt - Lap(u) = u_t |u_t|^{p-1}.
 *
 * beta is always recomputed as 1/(p-1); alpha must lie strictly above
 * max{beta(beta+1)/2, 1+2*beta, 2} so that the rho^alpha weight stays
 * smooth at the ball boundary.
 */
struct ModelParams {
  int dim = 1;           ///< spatial dimension N
  double p = 2.0;        ///< nonlinearity exponent, p > 1
  double beta = 1.0;     ///< similarity exponent 1/(p-1)
  double alpha = 4.0;    ///< ball weight exponent
  AdmissibilityBranch branch = AdmissibilityBranch::integer_low_dim;
};

/** The four exponential kernels evaluated at one similarity time. */
struct KernelValues {
  double g;   ///< e^{(beta+1)s}
  double g2;  ///< e^{(beta-1)s}
  double h;   ///< e^{-(beta+1)s}
  double h2;  ///< e^{-(beta-1)s}
};

/** Lower bound that alpha must strictly exceed. */
double alpha_threshold(double beta);

/**
 * Validates (N, p), fills in beta and alpha.
 *
 * alpha defaults to alpha_threshold(beta) + 1. Throws std::invalid_argument
 * when (N, p) sits on neither admissibility branch or when an explicit
 * alpha is at or below the threshold.
 */
ModelParams make_params(int dim, double p, double alpha_override = -1.0);

/** Kernel values at s; throws std::domain_error once an exponent leaves
 *  the representable range (silent infinities would poison quadratures). */
KernelValues kernels(const ModelParams& params, double s);

/** Exact blowing-up solution v(t) = [(p-1)(T-t)]^{-1/(p-1)} of v' = v^p. */
double ode_exact(double p, double T, double t);

/** Constant similarity profile beta^beta of the exact ODE blow-up. */
double ode_steady_theta(double p);

/** v|v|^{p-1}, the sign-preserving power nonlinearity. */
double signed_power(double v, double p);

}  // namespace blowlab

#endif  // BLOWLAB_MODEL_HPP
