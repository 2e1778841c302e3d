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

#ifndef RISBF_ROBUST_CORE_HPP_
#define RISBF_ROBUST_CORE_HPP_

#include "risbf/types.hpp"

namespace risbf {

// Phase vectors theta hold the diagonal of the RIS reflection matrix.
// Quadratic forms follow the convention q(theta) = theta^T A conj(theta).

/// Eigen-decomposition of H H^H, shared by every mu and theta evaluated
/// against the same BS-RIS channel.
class ChannelSpectrum {
 public:
  explicit ChannelSpectrum(const CMat& h_br);

  const CMat& h_br() const { return h_br_; }
  const CMat& gram() const { return gram_; }        // H H^H
  const CMat& vectors() const { return vectors_; }  // unitary U
  const RVec& values() const { return values_; }    // eigenvalues, clamped >= 0
  double max_value() const { return values_.maxCoeff(); }
  int num_elements() const { return static_cast<int>(h_br_.rows()); }

 private:
  CMat h_br_;
  CMat gram_;
  CMat vectors_;
  RVec values_;
};

struct SpectralForms {
  double mu = 0.0;
  CMat upsilon;  // objective matrix
  CMat gamma;    // constraint matrix
  CMat z;        // N x M
  CMat x;        // N x N
};

/// Throws DomainError for mu <= 0.
SpectralForms AssembleSpectralForms(const ChannelSpectrum& spectrum,
                                    const CVec& h_hat, double beta, double mu);
SpectralForms AssembleSpectralForms(const CMat& h_br, const CVec& h_hat,
                                    double beta, double mu);

/// Objective and constraint quadratic forms at (theta, mu) without forming
/// the N x N matrices.
struct FormValues {
  double objective = 0.0;
  double constraint = 0.0;
};
FormValues EvaluateForms(const ChannelSpectrum& spectrum, const CVec& h_hat,
                         const CVec& theta, double beta, double mu);

/// Worst-case objective F and constraint residual C evaluated with the
/// explicit inverse of (Theta H H^H Theta^H + mu I).
struct DirectValues {
  double f = 0.0;
  double c = 0.0;
};
DirectValues DirectObjectiveAndConstraint(const CMat& h_br, const CVec& h_hat,
                                          const CVec& theta, double mu,
                                          double eps);

/// -(Theta H H^H Theta^H + mu I)^{-1} Theta H H^H Theta^H h_hat.
/// `theta` must have constant modulus `beta`.
CVec WorstCaseDeltaH(const ChannelSpectrum& spectrum, const CVec& h_hat,
                     const CVec& theta, double beta, double mu);

struct BisectionOptions {
  double tol = 1e-10;  // relative, on the constraint form
  int max_iters = 400;
};

/// Root of q_gamma(mu) = eps^2. Throws InfeasibleError (witness = the
/// supremum of q_gamma) when the error ball can cancel the effective
/// channel, and DomainError for eps <= 0.
double BisectMu(const ChannelSpectrum& spectrum, const CVec& h_hat,
                const CVec& theta, double beta, double eps,
                const BisectionOptions& options = {});

/// Supremum of the constraint form as mu -> 0+.
double ConstraintFormSupremum(const ChannelSpectrum& spectrum,
                              const CVec& h_hat, const CVec& theta,
                              double beta);

/// Direct link that subtracts delta_bu from the cascaded gain.
CVec WorstCaseHbu(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                  double delta_bu);

/// Unit-norm maximum-ratio beam for the combined channel.
CVec MatchedBeamformer(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                       const CVec& h_bu);

/// Row vector (h_eff^H Theta H + h_bu^H) as a column (its conjugate transpose).
CVec CombinedChannel(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                     const CVec& h_bu);

}  // namespace risbf

#endif  // RISBF_ROBUST_CORE_HPP_
