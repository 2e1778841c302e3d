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

#ifndef RISBF_CSI_ERROR_BOUND_HPP_
#define RISBF_CSI_ERROR_BOUND_HPP_

#include <cstdint>
#include <vector>

#include "risbf/geometry_channel.hpp"
#include "risbf/types.hpp"

namespace risbf {

/// Quadratic models of the squared LoS reconstruction error around the
/// location estimate.
struct BoundMatrices {
  Mat3 s;  // quartic-term weight
  Mat3 r;  // quadratic-term weight
  std::vector<Mat3> xi;  // per-element eta eta'
  std::vector<Mat3> g_alpha;
  std::vector<Mat3> g_half_alpha;
  double eps_dp = 0.0;
  double quartic_coeff = 0.0;  // 4 pi^4 / (3 lambda^4 N)
};

struct BoundResult {
  double omega_max = 0.0;  // maximized quadratic surrogate of the error
  double eps_ru_los = 0.0;
  double eps_total = 0.0;
  double h_hat_norm = 0.0;
};

/// Throws DomainError when the uncertainty ball reaches an RIS element.
BoundMatrices BuildBoundMatrices(const ArrayGeometry& geometry,
                                 const PathLossParams& path_loss,
                                 double wavelength, const Vec3& p_hat,
                                 double eps_dp);

/// Hessian-form of |x|^(-a) at x = v - p_hat, as used by BuildBoundMatrices.
Mat3 InversePowerHessian(const Vec3& offset, double a);

/// Surrogate objective dp' R dp - c (dp' S dp)^2 for one displacement.
double SurrogateObjective(const BoundMatrices& bm, const Vec3& dp);

/// max over P PSD of -c tr(S P)^2 + tr(R P) s.t. tr(P) <= eps^2, solved
/// as a linear SDP with a 2x2 epigraph block. Throws SolverError when the
/// interior-point method fails.
double SolveBoundProgram(const BoundMatrices& bm);

BoundResult CsiErrorBound(const ArrayGeometry& geometry,
                          const ChannelParams& channel,
                          const PathLossParams& path_loss, const Vec3& p_hat,
                          double eps_dp);

/// Uniform point in the ball of radius `radius` around the origin.
Vec3 SampleInBall(double radius, std::uint64_t seed);

/// Largest observed |h_ru(p) - h_hat| over `trials` positions drawn
/// uniformly in the uncertainty ball, each with a fresh scattered part.
double MonteCarloBound(const ArrayGeometry& geometry,
                       const PathLossParams& path_loss,
                       const ChannelParams& channel, const Vec3& p_hat,
                       double eps_dp, int trials, std::uint64_t seed);

}  // namespace risbf

#endif  // RISBF_CSI_ERROR_BOUND_HPP_
