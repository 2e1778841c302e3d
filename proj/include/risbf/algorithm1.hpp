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

#ifndef RISBF_ALGORITHM1_HPP_
#define RISBF_ALGORITHM1_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risbf/phase_opt.hpp"
#include "risbf/types.hpp"

namespace risbf {

enum class PhaseSolver { kSdr, kBnb };

/// Starting phases: all zero arguments, seeded random arguments, or the
/// nominal (non-robust) design rounded into the phase set.
enum class InitialPhase { kZero, kRandom, kNominal };

const char* ToString(PhaseSolver solver);
/// Parses "sdr" or "bnb"; throws DomainError otherwise.
PhaseSolver ParsePhaseSolver(const std::string& name);
const char* ToString(InitialPhase init);
InitialPhase ParseInitialPhase(const std::string& name);

struct RobustInputs {
  CMat h_br;           // N x M
  CVec h_hat;          // reconstructed RIS-UE channel
  double eps_dh = 0.0;  // CSI error radius
  double beta = 1.0;
  PhaseSet phase_set;
  double transmit_power = 0.0;  // watts
  double noise_power = 0.0;     // watts
  double delta_bu = 0.0;
  double eps_r = 1e-4;  // stopping threshold on the objective, SNR units
  double tol_bnb = 2e-4;
  int max_bnb_nodes = 1000;
  int max_iterations = 50;
  std::uint64_t seed = 0;  // randomization draws and random starts
  InitialPhase init = InitialPhase::kZero;

  void Validate() const;
  /// P_T / sigma^2, the factor turning gains into SNR.
  double SnrScale() const { return transmit_power / noise_power; }
};

struct IterationRecord {
  int index = 0;
  double mu = 0.0;
  double objective = 0.0;   // phase-problem value, SNR units
  double worst_case = 0.0;  // worst-case gain of the incoming phases, SNR units
  double wall_ms = 0.0;
  std::string solver_status;
  bool accepted = true;  // false when the previous phases were kept
};

struct RunResult {
  CVec theta;
  CVec w;
  double mu = 0.0;
  CVec delta_h;
  CVec h_bu;
  double worst_case_snr = 0.0;  // linear
  std::vector<IterationRecord> iterations;
  bool converged = false;
};

RunResult RunAlgorithm1(const RobustInputs& inputs, PhaseSolver solver);

/// Worst-case quantities for given phases: bisected mu, worst error,
/// worst direct link, matched beam and SNR. `iterations` stays empty.
RunResult EvaluatePhases(const RobustInputs& inputs, const CVec& theta);

struct BaselineResult {
  CVec theta;
  CVec w;
};

/// Phases maximizing the nominal cascaded gain, beam matched to the
/// nominal channel.
BaselineResult NonRobustBaseline(const RobustInputs& inputs);

/// P_T |((h_hat + delta_h)^H Theta H + h_bu^H) w|^2 / sigma^2.
double WorstCaseSnr(const CVec& theta, const CVec& w, const CMat& h_br,
                    const CVec& h_hat, const CVec& delta_h, const CVec& h_bu,
                    double transmit_power, double noise_power);

/// Minimum SNR of a fixed (theta, w) over ||delta_h|| <= eps and
/// ||h_bu|| <= delta_bu, with the minimizing errors.
struct FixedBeamResult {
  double snr = 0.0;
  CVec delta_h;
  CVec h_bu;
};
FixedBeamResult FixedBeamWorstCase(const CVec& theta, const CVec& w,
                                   const CMat& h_br, const CVec& h_hat,
                                   double eps, double delta_bu,
                                   double transmit_power, double noise_power);

/// Initial phases: all arguments at the start of the set, or seeded random
/// arguments inside it.
CVec InitialPhases(int n, double beta, const PhaseSet& set,
                   std::optional<std::uint64_t> seed);

}  // namespace risbf

#endif  // RISBF_ALGORITHM1_HPP_
