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

#ifndef RISBF_PHASE_OPT_HPP_
#define RISBF_PHASE_OPT_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "risbf/sdp.hpp"
#include "risbf/types.hpp"

namespace risbf {

// Outer phase problem: maximize theta^T U conj(theta) subject to
// theta^T G conj(theta) >= eps^2 and |theta_i| = beta, arg(theta_i) in a
// phase set. Lifted matrices are theta theta^H.

enum class PhaseSetKind { kFull, kInterval, kDiscrete };

struct PhaseSet {
  PhaseSetKind kind = PhaseSetKind::kFull;
  double lower = 0.0;        // interval only, radians
  double upper = 2.0 * kPi;  // interval only, radians
  int levels = 0;            // discrete only: k * 2 pi / levels

  static PhaseSet Full();
  static PhaseSet Interval(double lower, double upper);
  static PhaseSet Discrete(int levels);

  /// Throws DomainError unless lower < upper <= lower + 2 pi, or levels >= 2.
  void Validate() const;
  bool Contains(double arg, double tol = 1e-9) const;
  double LevelAngle(int k) const;
  std::string Describe() const;
};

/// Projects every element onto modulus beta and an argument in `set`.
/// Intervals map outside arguments to the nearer endpoint along the circle,
/// with the midpoint of the excluded arc going to the lower endpoint.
/// Discrete sets take the nearest level; zero entries take argument
/// `set.lower` (full and interval) or level 0.
CVec ArgumentRounding(const CVec& theta, const PhaseSet& set, double beta);

struct PhaseSolveResult {
  CVec theta;
  double objective = 0.0;             // theta^T U conj(theta)
  double constraint = 0.0;            // theta^T G conj(theta)
  double relaxation_objective = 0.0;  // SDP value (SDR) or final bound (BnB)
  double gap = 0.0;                   // relaxation_objective - objective
  bool rank_one_certified = false;
  double eigen_ratio = 0.0;  // lambda_2 / lambda_1 of the lifted matrix
  CMat lifted;               // SDR only
  int node_count = 0;        // BnB only
  int pruned_infeasible = 0;
  int numerical_fallbacks = 0;  // nodes bounded by their parent
  bool budget_exhausted = false;
  std::string status = "optimal";
};

/// Raised when no rounded candidate meets the constraint form; carries the
/// best candidate found.
class PhaseExtractionError : public InfeasibleError {
 public:
  PhaseExtractionError(const std::string& what, double witness, CVec candidate)
      : InfeasibleError(what, witness), candidate_(std::move(candidate)) {}
  const CVec& candidate() const { return candidate_; }

 private:
  CVec candidate_;
};

struct SdrOptions {
  int randomization_trials = 200;
  std::uint64_t seed = 0;
  double rank_one_tol = 1e-6;
  double feasibility_slack = 1e-6;  // relative, on the constraint form
  sdp::SdpOptions sdp;
};

/// Semidefinite relaxation over the full circle. eps == 0 drops the
/// constraint form. Throws InfeasibleError when the relaxed constraint
/// cannot be met (witness = eps^2).
PhaseSolveResult SdrPhaseSolve(const CMat& upsilon, const CMat& gamma,
                               double eps, double beta,
                               const SdrOptions& options = {});

/// Phase vector from a lifted solution: principal-eigenvector projection
/// when the matrix is numerically rank one, else the best of Gaussian
/// randomization draws and that projection.
CVec ExtractRankOne(const CMat& lifted, const CMat& upsilon,
                    const CMat& gamma, double eps, double beta,
                    const SdrOptions& options = {});

struct BnbOptions {
  double tol = 2e-4;  // relative gap between bound and incumbent
  int max_nodes = 1000;
  bool fix_rotation = true;
  double feasibility_slack = 1e-6;
  std::optional<CVec> incumbent;  // seed, used only if it lies in the set
  sdp::SdpOptions sdp;
};

PhaseSolveResult BnbPhaseSolve(const CMat& upsilon, const CMat& gamma,
                               double eps, double beta, const PhaseSet& set,
                               const BnbOptions& options = {});

/// theta^T A conj(theta) for Hermitian A.
double PhaseForm(const CMat& a, const CVec& theta);

}  // namespace risbf

#endif  // RISBF_PHASE_OPT_HPP_
