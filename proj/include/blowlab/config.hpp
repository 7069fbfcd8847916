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

#ifndef BLOWLAB_CONFIG_HPP
#define BLOWLAB_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowlab/energy.hpp"
#include "blowlab/solver.hpp"

namespace blowlab {

/** Schema violation; the message carries the offending line. */
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SimilarityConfig {
  std::vector<std::array<double, 3>> centers;  ///< empty = auto placement
  bool estimate_T_prime = true;
  double T_prime_fixed = 0.0;
  double s0_offset = 0.0;
  double ds = 0.1;
  double s_max = 6.0;
  int nz = 0;  ///< 0 = match the solver resolution
};

struct EnergyConfig {
  T3Convention convention = T3Convention::as_stated;
  std::optional<double> C_hypothesis;
};

struct BoundsConfig {
  double r = 3.0;
};

struct OutputConfig {
  std::string directory = "out";
  std::string format = "csv";
};

struct RunConfig {
  ModelParams params;
  GridSpec grid;
  InitialCondition ic;
  StepLimits limits;
  double blowup_threshold = 1e8;
  double t_max = 10.0;
  int stencil_order = 2;
  SimilarityConfig sim;
  EnergyConfig energy;
  BoundsConfig bounds;
  OutputConfig output;
  std::string source_text;  ///< config echo for the manifest
};

/**
 * Parses the flat-section key=value format (see README for the schema).
 * Unknown sections or keys are errors; messages carry line numbers.
 * `base_dir` anchors relative table-IC paths.
 */
RunConfig parse_config(const std::string& text,
                       const std::string& base_dir = ".");

RunConfig parse_config_file(const std::string& path);

/** nz used for the ball grid: explicit, or matched to the solver dx. */
int effective_nz(const RunConfig& config);

}  // namespace blowlab

#endif  // BLOWLAB_CONFIG_HPP
