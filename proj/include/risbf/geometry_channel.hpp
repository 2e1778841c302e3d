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

#ifndef RISBF_GEOMETRY_CHANNEL_HPP_
#define RISBF_GEOMETRY_CHANNEL_HPP_

#include <cstdint>
#include <vector>

#include "risbf/types.hpp"

namespace risbf {

// Placement of the BS uniform linear array (along +x) and the square RIS
// (in the x-z plane). Element j = l + (k-1)L of the RIS sits at
// v1 + ((l-1) d_ris, 0, (k-1) d_ris).
struct ArrayGeometry {
  Vec3 bs_anchor{0.0, 0.0, 25.0};   // q1, left-end BS antenna
  Vec3 ris_anchor{2.0, -2.0, 26.0};  // v1, bottom-left RIS element
  double d_bs = 0.005;
  double d_ris = 0.005;
  int num_bs_antennas = 32;  // M
  int ris_side = 4;          // L

  int num_ris_elements() const { return ris_side * ris_side; }
  void Validate() const;
};

struct PathLossParams {
  double zeta0 = 1e-3;  // linear, -30 dB
  double d0 = 1.0;
  double alpha = 2.2;

  void Validate() const;
};

struct ChannelParams {
  double wavelength = kSpeedOfLight / 60e9;
  double kappa_r = 20.0;
  double delta_ru_nlos = 1e-4;
  double delta_bu = 0.0;
  bool e_bu = true;
  double beta = 1.0;

  void Validate() const;
  double los_weight() const;   // sqrt(kappa / (1 + kappa))
  double nlos_weight() const;  // sqrt(1 / (1 + kappa))
};

struct ElementPositions {
  std::vector<Vec3> bs;
  std::vector<Vec3> ris;
};

ElementPositions ComputeElementPositions(const ArrayGeometry& geometry);

/// zeta0 * (d / d0)^(-alpha). Throws DomainError for d <= 0.
double PathLoss(double distance, const PathLossParams& params);

/// N x M LoS BS-RIS channel; entry (j, i) carries the phase
/// (2 pi / lambda) (|v1 - q1| - |vj - qi|).
CMat BuildBsRisChannel(const ArrayGeometry& geometry,
                       const PathLossParams& path_loss, double wavelength);

/// LoS RIS-UE channel for a UE at `p`. Element j carries the phase
/// (2 pi / lambda) (|vj - p| - |v1 - p|). Throws DomainError when p
/// coincides with an RIS element.
CVec BuildRisUeLos(const ArrayGeometry& geometry,
                   const PathLossParams& path_loss, double wavelength,
                   const Vec3& p);

/// Same formula evaluated at the location estimate.
CVec ReconstructRisUeLos(const ArrayGeometry& geometry,
                         const PathLossParams& path_loss, double wavelength,
                         const Vec3& p_hat);

struct ChannelSet {
  CMat h_br;       // N x M
  CVec h_ru_los;   // LoS part at the true position
  CVec h_ru_nlos;  // scattered part, norm delta_ru_nlos
  CVec h_ru_hat;   // reconstructed from the estimate
  CVec h_ru_true;  // Rician composite at the true position
  CVec h_bu;       // M, norm delta_bu
};

/// Complex vector of i.i.d. standard normal real/imag parts rescaled to
/// the requested l2 norm (zero vector when norm == 0).
CVec FixedNormGaussian(int size, double norm, std::uint64_t seed);

ChannelSet SampleRician(const ArrayGeometry& geometry,
                        const PathLossParams& path_loss,
                        const ChannelParams& channel, const Vec3& p_true,
                        const Vec3& p_hat, std::uint64_t seed);

/// Deterministic per-index seed derivation (splitmix64 of seed ^ index).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

}  // namespace risbf

#endif  // RISBF_GEOMETRY_CHANNEL_HPP_
