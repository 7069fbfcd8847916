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

#include "blowlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blowlab {

namespace {

// Exponents beyond this underflow/overflow a double.
constexpr double kMaxExponent = 690.0;

bool is_integer(double p) {
  return std::abs(p - std::round(p)) < 1e-12;
}

}  // namespace

const char* branch_name(AdmissibilityBranch b) {
  switch (b) {
    case AdmissibilityBranch::integer_subcritical: return "integer_subcritical";
    case AdmissibilityBranch::integer_low_dim: return "integer_low_dim";
    case AdmissibilityBranch::regularity_real: return "regularity_real";
  }
  return "unknown";
}

double alpha_threshold(double beta) {
  return std::max({beta * (beta + 1.0) / 2.0, 1.0 + 2.0 * beta, 2.0});
}

ModelParams make_params(int dim, double p, double alpha_override) {
  if (dim < 1) throw std::invalid_argument("make_params: N >= 1 required");
  if (!(p > 1.0)) throw std::invalid_argument("make_params: p > 1 required");

  ModelParams mp;
  mp.dim = dim;
  mp.p = p;
  mp.beta = 1.0 / (p - 1.0);

  // Integer branches first; they carry the stronger hypothesis.
  bool integer_ok = false;
  if (is_integer(p)) {
    if (dim >= 3) {
      integer_ok = p < static_cast<double>(dim) / (dim - 2) - 1e-12;
      mp.branch = AdmissibilityBranch::integer_subcritical;
    } else {
      integer_ok = p >= 2.0 - 1e-12;
      mp.branch = AdmissibilityBranch::integer_low_dim;
    }
  }
  if (!integer_ok) {
    if (dim <= 3) {
      mp.branch = AdmissibilityBranch::regularity_real;
    } else {
      throw std::invalid_argument(
          "make_params: (N, p) admissible on no branch (integer p needs "
          "p < N/(N-2) for N >= 3; real p needs N <= 3)");
    }
  }

  const double thr = alpha_threshold(mp.beta);
  if (alpha_override < 0.0) {
    mp.alpha = thr + 1.0;
  } else {
    if (alpha_override <= thr) {
      throw std::invalid_argument(
          "make_params: alpha must exceed max{b(b+1)/2, 1+2b, 2} = " +
          std::to_string(thr));
    }
    mp.alpha = alpha_override;
  }
  return mp;
}

KernelValues kernels(const ModelParams& params, double s) {
  if (!std::isfinite(s)) throw std::invalid_argument("kernels: s not finite");
  const double a = (params.beta + 1.0) * s;
  const double b = (params.beta - 1.0) * s;
  if (std::abs(a) > kMaxExponent || std::abs(b) > kMaxExponent) {
    throw std::domain_error("kernels: exponent out of representable range");
  }
  return KernelValues{std::exp(a), std::exp(b), std::exp(-a), std::exp(-b)};
}

double ode_exact(double p, double T, double t) {
  if (!(p > 1.0)) throw std::invalid_argument("ode_exact: p > 1 required");
  if (!(t >= 0.0 && t < T)) {
    throw std::invalid_argument("ode_exact: need 0 <= t < T");
  }
  return std::pow((p - 1.0) * (T - t), -1.0 / (p - 1.0));
}

double ode_steady_theta(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ode_steady_theta: p > 1");
  const double beta = 1.0 / (p - 1.0);
  return std::pow(beta, beta);
}

double signed_power(double v, double p) {
  if (v == 0.0) return 0.0;
  return v * std::pow(std::abs(v), p - 1.0);
}

}  // namespace blowlab
