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

#include "risbf/csi_error_bound.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "risbf/sdp.hpp"

namespace risbf {

Mat3 InversePowerHessian(const Vec3& offset, double a) {
  const double d = offset.norm();
  return a * (a + 2.0) * std::pow(d, -a - 4.0) * offset * offset.transpose() -
         a * std::pow(d, -a - 2.0) * Mat3::Identity();
}

BoundMatrices BuildBoundMatrices(const ArrayGeometry& geometry,
                                 const PathLossParams& path_loss,
                                 double wavelength, const Vec3& p_hat,
                                 double eps_dp) {
  geometry.Validate();
  path_loss.Validate();
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  if (!(eps_dp >= 0.0) || !std::isfinite(eps_dp)) {
    throw DomainError("location error radius must be finite and non-negative");
  }
  const ElementPositions pos = ComputeElementPositions(geometry);
  const int n = geometry.num_ris_elements();
  const double alpha = path_loss.alpha;
  const double wave_sq = 4.0 * kPi * kPi / (wavelength * wavelength);

  BoundMatrices bm;
  bm.eps_dp = eps_dp;
  bm.quartic_coeff =
      4.0 * std::pow(kPi, 4) / (3.0 * std::pow(wavelength, 4) * n);
  bm.s.setZero();
  bm.r.setZero();

  const Vec3 ref = pos.ris[0] - p_hat;
  const Vec3 ref_dir = ref / ref.norm();
  for (int j = 0; j < n; ++j) {
    const Vec3 offset = pos.ris[j] - p_hat;
    const double d = offset.norm();
    if (!(d > eps_dp)) {
      throw DomainError("UE uncertainty ball touches RIS element " +
                        std::to_string(j));
    }
    const Vec3 eta = ref_dir - offset / d;
    const Mat3 xi = eta * eta.transpose();
    const double shrunk = d - eps_dp;
    const Mat3 g_a = InversePowerHessian(offset, alpha);
    const Mat3 g_h = InversePowerHessian(offset, alpha / 2.0);

    bm.s += std::pow(shrunk, -alpha / 4.0) * std::pow(d, -alpha / 4.0) * xi;
    bm.r += 0.5 * g_a - std::pow(d, -alpha / 2.0) * g_h +
            wave_sq * std::pow(shrunk, -alpha / 2.0) * std::pow(d, -alpha / 2.0) * xi;
    bm.xi.push_back(xi);
    bm.g_alpha.push_back(g_a);
    bm.g_half_alpha.push_back(g_h);
  }
  bm.s = 0.5 * (bm.s + bm.s.transpose()).eval();
  bm.r = 0.5 * (bm.r + bm.r.transpose()).eval();
  return bm;
}

double SurrogateObjective(const BoundMatrices& bm, const Vec3& dp) {
  const double quartic = dp.dot(bm.s * dp);
  return dp.dot(bm.r * dp) - bm.quartic_coeff * quartic * quartic;
}

double SolveBoundProgram(const BoundMatrices& bm) {
  const double eps = bm.eps_dp;
  if (eps == 0.0) return 0.0;
  const double eps2 = eps * eps;

  Eigen::SelfAdjointEigenSolver<Mat3> eig_s(bm.s, Eigen::EigenvaluesOnly);
  const double s_scale = eig_s.eigenvalues().cwiseAbs().maxCoeff();
  const double epi_coeff = bm.quartic_coeff * eps2 * eps2 * s_scale * s_scale;

  // Variables: Q = P / eps^2 (trace <= 1) and, when S != 0, the epigraph
  // block E = [[1, u], [u, t]] with u = tr(S Q) / s_scale and t >= u^2.
  sdp::SdpProblem prob;
  const int q_blk = prob.AddBlock(3);
  prob.objective.push_back({q_blk, sdp::SymCoefficient::Dense(eps2 * RMat(bm.r))});
  prob.constraints.push_back({{{q_blk, sdp::SymCoefficient::Dense(-RMat::Identity(3, 3))}},
                              sdp::Sense::kGreaterEqual, -1.0, "trace"});
  const bool has_epigraph = s_scale > 0.0 && epi_coeff > 0.0;
  if (has_epigraph) {
    const int e_blk = prob.AddBlock(2);
    prob.objective.push_back({e_blk, sdp::SymCoefficient::Entry(2, 1, 1, -epi_coeff)});
    prob.constraints.push_back({{{e_blk, sdp::SymCoefficient::Entry(2, 0, 0, 1.0)}},
                                sdp::Sense::kEqual, 1.0, "epigraph_anchor"});
    prob.constraints.push_back(
        {{{e_blk, sdp::SymCoefficient::Entry(2, 0, 1, 0.5)},
          {q_blk, sdp::SymCoefficient::Dense(-RMat(bm.s) / s_scale)}},
         sdp::Sense::kEqual, 0.0, "epigraph_link"});
  }
  const sdp::SdpSolution sol = sdp::SolveSdp(prob);
  if (sol.status != sdp::SdpStatus::kOptimal &&
      !(sol.status == sdp::SdpStatus::kMaxIterations && sol.residuals.Max() <= 1e-6)) {
    throw SolverError(std::string("bound program: ") + sdp::ToString(sol.status),
                      sol.residuals.Max());
  }
  const RMat& q = sol.primal[q_blk];
  const double quartic = (RMat(bm.s) * q).trace();
  const double value = eps2 * (RMat(bm.r) * q).trace() -
                       bm.quartic_coeff * eps2 * eps2 * quartic * quartic;
  return std::max(value, 0.0);
}

BoundResult CsiErrorBound(const ArrayGeometry& geometry,
                          const ChannelParams& channel,
                          const PathLossParams& path_loss, const Vec3& p_hat,
                          double eps_dp) {
  channel.Validate();
  const BoundMatrices bm =
      BuildBoundMatrices(geometry, path_loss, channel.wavelength, p_hat, eps_dp);
  BoundResult out;
  out.omega_max = SolveBoundProgram(bm);
  out.eps_ru_los = std::sqrt(path_loss.zeta0 * std::pow(path_loss.d0, path_loss.alpha) *
                             out.omega_max);
  out.h_hat_norm =
      ReconstructRisUeLos(geometry, path_loss, channel.wavelength, p_hat).norm();
  const double los_w = channel.los_weight();
  out.eps_total = los_w * out.eps_ru_los + (1.0 - los_w) * out.h_hat_norm +
                  channel.nlos_weight() * channel.delta_ru_nlos;
  return out;
}

Vec3 SampleInBall(double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Vec3 dir;
  do {
    dir = Vec3(normal(rng), normal(rng), normal(rng));
  } while (dir.norm() == 0.0);
  return radius * std::cbrt(uniform(rng)) * dir / dir.norm();
}

double MonteCarloBound(const ArrayGeometry& geometry,
                       const PathLossParams& path_loss,
                       const ChannelParams& channel, const Vec3& p_hat,
                       double eps_dp, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  channel.Validate();
  const CVec h_hat =
      ReconstructRisUeLos(geometry, path_loss, channel.wavelength, p_hat);
  const int n = geometry.num_ris_elements();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = DeriveSeed(seed, static_cast<std::uint64_t>(t));
    const Vec3 p = p_hat + SampleInBall(eps_dp, DeriveSeed(trial_seed, 0));
    const CVec nlos = FixedNormGaussian(n, channel.delta_ru_nlos, DeriveSeed(trial_seed, 1));
    const CVec h = channel.los_weight() *
                       BuildRisUeLos(geometry, path_loss, channel.wavelength, p) +
                   channel.nlos_weight() * nlos;
    worst = std::max(worst, (h - h_hat).norm());
  }
  return worst;
}

}  // namespace risbf
