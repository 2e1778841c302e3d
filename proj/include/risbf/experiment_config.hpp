// Copyright 2026 The risbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISBF_EXPERIMENT_CONFIG_HPP_
#define RISBF_EXPERIMENT_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "risbf/algorithm1.hpp"
#include "risbf/geometry_channel.hpp"
#include "risbf/phase_opt.hpp"

namespace risbf {

enum class ExperimentKind {
  kBoundSweep,
  kBoundVsPosition,
  kSnrVsN,
  kSnrVsEps,
  kConvergence,
  kRestrictedSet,
};

const char* ToString(ExperimentKind kind);
ExperimentKind ParseExperimentKind(const std::string& name);

/// Raised for schema violations; the message starts with the field path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kSnrVsN;
  ArrayGeometry geometry;  // ris_side is overridden by each sweep point
  Vec3 ue_estimate{10.0, 5.0, 18.0};
  std::vector<int> ris_sides{2, 4, 6};
  std::vector<double> eps_dp{0.1, 0.3, 0.5};

  double carrier_hz = 60e9;
  ChannelParams channel;  // wavelength follows carrier_hz
  PathLossParams path_loss;
  double transmit_power = DbmToWatts(27.0);  // watts
  double noise_power = DbmToWatts(-80.0);    // watts

  double eps_r = 1e-4;
  double tol_bnb = 2e-4;
  int max_bnb_nodes = 1000;
  int max_iterations = 50;
  int trials = 50000;  // Monte Carlo positions per bound point
  int random_starts = 5;  // convergence study
  std::uint64_t seed = 1;
  PhaseSolver solver = PhaseSolver::kSdr;
  InitialPhase init = InitialPhase::kZero;
  PhaseSet phase_set;

  char position_axis = 'x';
  std::vector<double> position_values{6.0, 8.0, 10.0, 12.0, 14.0};
  std::vector<double> restricted_uppers{kPi, kPi / 2.0};

  /// Throws ConfigError on out-of-range values.
  void Validate() const;
};

/// Parses a config document. A run manifest is accepted as well; its
/// "config" member is used. Unknown keys are rejected and absent keys keep
/// their defaults.
ExperimentConfig ParseConfigJson(const nlohmann::json& doc);
ExperimentConfig ParseConfigText(const std::string& text);
ExperimentConfig ParseConfigFile(const std::string& path);

/// Complete, re-parsable echo with powers in watts.
nlohmann::json ConfigToJson(const ExperimentConfig& config);

/// "27 dBm", "0.5 W", "500 mW" or a bare number (watts).
double ParsePower(const std::string& text);
/// "-30 dB" or a bare number (linear ratio).
double ParseRatio(const std::string& text);

}  // namespace risbf

#endif  // RISBF_EXPERIMENT_CONFIG_HPP_
