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

#include "risbf/geometry_channel.hpp"

#include <cmath>
#include <random>
#include <string>

namespace risbf {

void ArrayGeometry::Validate() const {
  if (!(d_bs > 0.0) || !(d_ris > 0.0)) {
    throw DomainError("array spacing must be positive");
  }
  if (num_bs_antennas < 1 || ris_side < 1) {
    throw DomainError("array sizes must be at least 1");
  }
  if (!bs_anchor.allFinite() || !ris_anchor.allFinite()) {
    throw DomainError("array anchors must be finite");
  }
}

void PathLossParams::Validate() const {
  if (!(zeta0 > 0.0) || !(d0 > 0.0) || !(alpha > 0.0)) {
    throw DomainError("path loss parameters must be positive");
  }
}

void ChannelParams::Validate() const {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  if (!(kappa_r >= 0.0)) throw DomainError("Rician factor must be >= 0");
  if (!(delta_ru_nlos >= 0.0) || !(delta_bu >= 0.0)) {
    throw DomainError("channel norms must be >= 0");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("reflection amplitude must lie in (0, 1]");
  }
}

double ChannelParams::los_weight() const {
  if (std::isinf(kappa_r)) return 1.0;
  return std::sqrt(kappa_r / (1.0 + kappa_r));
}

double ChannelParams::nlos_weight() const {
  if (std::isinf(kappa_r)) return 0.0;
  return std::sqrt(1.0 / (1.0 + kappa_r));
}

ElementPositions ComputeElementPositions(const ArrayGeometry& geometry) {
  geometry.Validate();
  ElementPositions out;
  const int m = geometry.num_bs_antennas;
  const int l_side = geometry.ris_side;
  out.bs.reserve(m);
  for (int i = 0; i < m; ++i) {
    out.bs.push_back(geometry.bs_anchor + Vec3(i * geometry.d_bs, 0.0, 0.0));
  }
  out.ris.resize(static_cast<std::size_t>(l_side) * l_side);
  // j = l + k L with zero-based l (column offset along x) and k (along z).
  for (int k = 0; k < l_side; ++k) {
    for (int l = 0; l < l_side; ++l) {
      out.ris[l + k * l_side] =
          geometry.ris_anchor +
          Vec3(l * geometry.d_ris, 0.0, k * geometry.d_ris);
    }
  }
  return out;
}

double PathLoss(double distance, const PathLossParams& params) {
  if (!(distance > 0.0)) {
    throw DomainError("path loss requires a positive distance, got " +
                      std::to_string(distance));
  }
  return params.zeta0 * std::pow(distance / params.d0, -params.alpha);
}

CMat BuildBsRisChannel(const ArrayGeometry& geometry,
                       const PathLossParams& path_loss, double wavelength) {
  path_loss.Validate();
  const ElementPositions pos = ComputeElementPositions(geometry);
  const int n = geometry.num_ris_elements();
  const int m = geometry.num_bs_antennas;
  const double k0 = 2.0 * kPi / wavelength;
  const double ref = (pos.ris[0] - pos.bs[0]).norm();
  CMat h(n, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = (pos.ris[j] - pos.bs[i]).norm();
      const double amp = std::sqrt(PathLoss(d, path_loss));
      h(j, i) = std::polar(amp, k0 * (ref - d));
    }
  }
  return h;
}

CVec BuildRisUeLos(const ArrayGeometry& geometry,
                   const PathLossParams& path_loss, double wavelength,
                   const Vec3& p) {
  path_loss.Validate();
  const ElementPositions pos = ComputeElementPositions(geometry);
  const int n = geometry.num_ris_elements();
  const double k0 = 2.0 * kPi / wavelength;
  const double ref = (pos.ris[0] - p).norm();
  CVec h(n);
  for (int j = 0; j < n; ++j) {
    const double d = (pos.ris[j] - p).norm();
    if (!(d > 0.0)) {
      throw DomainError("UE position coincides with RIS element " +
                        std::to_string(j));
    }
    h(j) = std::polar(std::sqrt(PathLoss(d, path_loss)), k0 * (d - ref));
  }
  return h;
}

CVec ReconstructRisUeLos(const ArrayGeometry& geometry,
                         const PathLossParams& path_loss, double wavelength,
                         const Vec3& p_hat) {
  return BuildRisUeLos(geometry, path_loss, wavelength, p_hat);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CVec FixedNormGaussian(int size, double norm, std::uint64_t seed) {
  CVec v = CVec::Zero(size);
  if (norm == 0.0 || size == 0) return v;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < size; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  const double current = v.norm();
  if (current == 0.0) {
    v(0) = Complex(norm, 0.0);
    return v;
  }
  return v * (norm / current);
}

ChannelSet SampleRician(const ArrayGeometry& geometry,
                        const PathLossParams& path_loss,
                        const ChannelParams& channel, const Vec3& p_true,
                        const Vec3& p_hat, std::uint64_t seed) {
  channel.Validate();
  ChannelSet set;
  set.h_br = BuildBsRisChannel(geometry, path_loss, channel.wavelength);
  set.h_ru_los = BuildRisUeLos(geometry, path_loss, channel.wavelength, p_true);
  set.h_ru_hat =
      ReconstructRisUeLos(geometry, path_loss, channel.wavelength, p_hat);
  const int n = geometry.num_ris_elements();
  set.h_ru_nlos =
      FixedNormGaussian(n, channel.delta_ru_nlos, DeriveSeed(seed, 0));
  set.h_ru_true = channel.los_weight() * set.h_ru_los +
                  channel.nlos_weight() * set.h_ru_nlos;
  const double bu_norm = channel.e_bu ? channel.delta_bu : 0.0;
  set.h_bu = FixedNormGaussian(geometry.num_bs_antennas, bu_norm,
                               DeriveSeed(seed, 1));
  return set;
}

}  // namespace risbf
