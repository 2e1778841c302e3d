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

#include "risbf/robust_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace risbf {

ChannelSpectrum::ChannelSpectrum(const CMat& h_br) : h_br_(h_br) {
  if (h_br.rows() == 0 || h_br.cols() == 0) {
    throw DomainError("BS-RIS channel must be non-empty");
  }
  gram_ = h_br_ * h_br_.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> eig(gram_);
  vectors_ = eig.eigenvectors();
  values_ = eig.eigenvalues().cwiseMax(0.0);
}

namespace {

void RequirePositiveMu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("dual variable mu must be positive and finite");
  }
}

// Coordinates of h_hat .* conj(theta) in the eigenbasis of H H^H.
CVec Coordinates(const ChannelSpectrum& spectrum, const CVec& h_hat,
                 const CVec& theta) {
  if (h_hat.size() != spectrum.num_elements() ||
      theta.size() != spectrum.num_elements()) {
    throw DomainError("vector length does not match the RIS size");
  }
  return spectrum.vectors().adjoint() * h_hat.cwiseProduct(theta.conjugate()).eval();
}

CMat WeightedGram(const ChannelSpectrum& spectrum, const RVec& weights) {
  const CMat& u = spectrum.vectors();
  CMat out = u * weights.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (out + out.adjoint());
}

// diag(conj(h)) M diag(h).
CMat Sandwich(const CVec& h_hat, const CMat& m) {
  CMat out = h_hat.conjugate().asDiagonal() * m * h_hat.asDiagonal();
  return 0.5 * (out + out.adjoint());
}

}  // namespace

SpectralForms AssembleSpectralForms(const ChannelSpectrum& spectrum,
                                    const CVec& h_hat, double beta, double mu) {
  RequirePositiveMu(mu);
  if (h_hat.size() != spectrum.num_elements()) {
    throw DomainError("h_hat length does not match the RIS size");
  }
  const RVec& s = spectrum.values();
  const double b2 = beta * beta;
  const RVec denom = (mu + b2 * s.array()).matrix();
  const RVec z_weight = (mu / denom.array()).matrix();
  const RVec x_weight = (b2 * s.array().square() / denom.array().square()).matrix();
  const RVec zz_weight = (mu * mu * s.array() / denom.array().square()).matrix();

  SpectralForms out;
  out.mu = mu;
  const CMat& u = spectrum.vectors();
  out.z = u * z_weight.cast<Complex>().asDiagonal() * (u.adjoint() * spectrum.h_br());
  out.x = WeightedGram(spectrum, x_weight);
  out.upsilon = Sandwich(h_hat, WeightedGram(spectrum, zz_weight));
  out.gamma = Sandwich(h_hat, out.x);
  return out;
}

SpectralForms AssembleSpectralForms(const CMat& h_br, const CVec& h_hat,
                                    double beta, double mu) {
  return AssembleSpectralForms(ChannelSpectrum(h_br), h_hat, beta, mu);
}

FormValues EvaluateForms(const ChannelSpectrum& spectrum, const CVec& h_hat,
                         const CVec& theta, double beta, double mu) {
  RequirePositiveMu(mu);
  const CVec u = Coordinates(spectrum, h_hat, theta);
  const RVec& s = spectrum.values();
  const double b2 = beta * beta;
  FormValues out;
  for (int k = 0; k < s.size(); ++k) {
    const double p = std::norm(u(k));
    const double t = mu + b2 * s(k);
    out.objective += mu * mu * s(k) * p / (t * t);
    out.constraint += b2 * s(k) * s(k) * p / (t * t);
  }
  return out;
}

DirectValues DirectObjectiveAndConstraint(const CMat& h_br, const CVec& h_hat,
                                          const CVec& theta, double mu,
                                          double eps) {
  RequirePositiveMu(mu);
  const Eigen::Index n = h_br.rows();
  const CMat th_h = theta.asDiagonal() * h_br;
  const CMat a = th_h * th_h.adjoint();
  const CMat system = a + mu * CMat::Identity(n, n);
  const CMat inv = system.inverse();
  if (!inv.allFinite()) throw DomainError("singular worst-case system");
  const CVec g = inv * (a * h_hat);
  DirectValues out;
  out.f = ((h_hat - g).adjoint() * th_h).squaredNorm();
  out.c = g.squaredNorm() - eps * eps;
  return out;
}

CVec WorstCaseDeltaH(const ChannelSpectrum& spectrum, const CVec& h_hat,
                     const CVec& theta, double beta, double mu) {
  RequirePositiveMu(mu);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if ((theta.cwiseAbs().array() - beta).abs().maxCoeff() > 1e-9 * beta) {
    throw DomainError("theta must have constant modulus beta");
  }
  // Theta U / beta is unitary and diagonalizes Theta H H^H Theta^H.
  const CMat rotated = theta.asDiagonal() * spectrum.vectors() / beta;
  const double b2 = beta * beta;
  const RVec& s = spectrum.values();
  const RVec shrink = (b2 * s.array() / (b2 * s.array() + mu)).matrix();
  return -(rotated * (shrink.cast<Complex>().asDiagonal() * (rotated.adjoint() * h_hat)));
}

double ConstraintFormSupremum(const ChannelSpectrum& spectrum,
                              const CVec& h_hat, const CVec& theta,
                              double beta) {
  const CVec u = Coordinates(spectrum, h_hat, theta);
  const RVec& s = spectrum.values();
  const double floor = 1e-14 * spectrum.max_value();
  double sup = 0.0;
  for (int k = 0; k < s.size(); ++k) {
    if (s(k) > floor) sup += std::norm(u(k));
  }
  return sup / (beta * beta);
}

double BisectMu(const ChannelSpectrum& spectrum, const CVec& h_hat,
                const CVec& theta, double beta, double eps,
                const BisectionOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("CSI error radius must be positive and finite");
  }
  const double target = eps * eps;
  const double scale = beta * beta * spectrum.max_value();
  const auto g = [&](double mu) {
    return EvaluateForms(spectrum, h_hat, theta, beta, mu).constraint;
  };
  if (!(scale > 0.0) || g(1e-12 * scale) <= target) {
    throw InfeasibleError(
        "error-dominated regime: the CSI error ball can cancel the cascaded channel",
        ConstraintFormSupremum(spectrum, h_hat, theta, beta));
  }
  double lo;
  double hi;
  if (g(scale) > target) {
    lo = scale;
    hi = 2.0 * scale;
    for (int i = 0; g(hi) > target; ++i) {
      if (i > 4000) throw SolverError("mu bracket did not close", hi);
      lo = hi;
      hi *= 2.0;
    }
  } else {
    hi = scale;
    lo = 0.5 * scale;
    while (g(lo) <= target) {
      hi = lo;
      lo *= 0.5;
    }
  }
  double mid = std::sqrt(lo * hi);
  for (int i = 0; i < options.max_iters; ++i) {
    mid = std::sqrt(lo * hi);
    const double val = g(mid);
    if (std::abs(val - target) <= options.tol * target) return mid;
    if (val > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-15) break;
  }
  return mid;
}

CVec WorstCaseHbu(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                  double delta_bu) {
  if (delta_bu < 0.0) throw DomainError("delta_bu must be non-negative");
  const CVec g = h_br.adjoint() * h_eff.cwiseProduct(theta.conjugate()).eval();
  if (delta_bu == 0.0) return CVec::Zero(h_br.cols());
  const double norm = g.norm();
  if (norm == 0.0) throw DomainError("effective cascaded channel is zero");
  return -delta_bu * g / norm;
}

CVec CombinedChannel(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                     const CVec& h_bu) {
  return h_br.adjoint() * h_eff.cwiseProduct(theta.conjugate()).eval() + h_bu;
}

CVec MatchedBeamformer(const CMat& h_br, const CVec& h_eff, const CVec& theta,
                       const CVec& h_bu) {
  const CVec c = CombinedChannel(h_br, h_eff, theta, h_bu);
  const double norm = c.norm();
  if (norm == 0.0) throw DomainError("combined channel is zero");
  return c / norm;
}

}  // namespace risbf
