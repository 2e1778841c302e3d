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
#include <set>

#include <gtest/gtest.h>

namespace risbf {
namespace {

TEST(ElementPositions, FollowsColumnMajorRisIndexing) {
  ArrayGeometry g;
  g.ris_side = 4;
  g.num_bs_antennas = 3;
  const ElementPositions pos = ComputeElementPositions(g);
  ASSERT_EQ(pos.ris.size(), 16u);
  ASSERT_EQ(pos.bs.size(), 3u);
  // j = 6 is column 2, row 1 (zero-based).
  EXPECT_TRUE(pos.ris[6].isApprox(Vec3(2.010, -2.0, 26.005), 1e-15));
  EXPECT_TRUE(pos.bs[2].isApprox(Vec3(0.010, 0.0, 25.0), 1e-15));
  EXPECT_EQ(pos.ris[0], g.ris_anchor);
}

TEST(PathLoss, ReferenceAndPowerLaw) {
  const PathLossParams p;
  EXPECT_DOUBLE_EQ(PathLoss(1.0, p), 1e-3);
  EXPECT_NEAR(PathLoss(10.0, p), 1e-3 * std::pow(10.0, -2.2), 1e-18);
  EXPECT_THROW(PathLoss(0.0, p), DomainError);
  EXPECT_THROW(PathLoss(-1.0, p), DomainError);
}

TEST(BsRisChannel, EntryMatchesDistanceFormula) {
  ArrayGeometry g;
  g.ris_side = 2;
  g.num_bs_antennas = 4;
  const PathLossParams pl;
  const double lambda = kSpeedOfLight / 60e9;
  const CMat h = BuildBsRisChannel(g, pl, lambda);
  ASSERT_EQ(h.rows(), 4);
  ASSERT_EQ(h.cols(), 4);
  const Vec3 q1 = g.bs_anchor;
  const Vec3 v1 = g.ris_anchor;
  const Vec3 qi = q1 + Vec3(3 * g.d_bs, 0, 0);
  const Vec3 vj = v1 + Vec3(g.d_ris, 0, g.d_ris);
  const double dij = (vj - qi).norm();
  const Complex want = std::sqrt(1e-3 * std::pow(dij, -2.2)) *
                       std::exp(Complex(0, 2 * kPi / lambda * ((v1 - q1).norm() - dij)));
  EXPECT_NEAR(std::abs(h(3, 3) - want), 0.0, 1e-15);
  EXPECT_NEAR(std::arg(h(0, 0)), 0.0, 1e-12);
}

TEST(RisUeChannel, NormOfEstimateForSixteenElements) {
  ArrayGeometry g;
  g.ris_side = 4;
  const CVec h = ReconstructRisUeLos(g, PathLossParams{}, kSpeedOfLight / 60e9, Vec3(10, 5, 18));
  EXPECT_NEAR(h.norm(), 0.0073396370916132339, 1e-15);
  EXPECT_NEAR(std::arg(h(0)), 0.0, 1e-12);
}

TEST(RisUeChannel, RejectsPositionOnElement) {
  ArrayGeometry g;
  EXPECT_THROW(BuildRisUeLos(g, PathLossParams{}, 0.005, g.ris_anchor), DomainError);
}

TEST(FixedNormGaussian, NormAndDeterminism) {
  const CVec a = FixedNormGaussian(9, 0.25, 42);
  const CVec b = FixedNormGaussian(9, 0.25, 42);
  EXPECT_NEAR(a.norm(), 0.25, 1e-15);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, FixedNormGaussian(9, 0.25, 43));
  EXPECT_EQ(FixedNormGaussian(4, 0.0, 1).norm(), 0.0);
}

TEST(SampleRician, CompositeOfLosAndScatteredParts) {
  ArrayGeometry g;
  g.ris_side = 3;
  ChannelParams ch;
  ch.delta_bu = 1e-3;
  const ChannelSet s = SampleRician(g, PathLossParams{}, ch, Vec3(10.1, 5, 18), Vec3(10, 5, 18), 7);
  EXPECT_NEAR(s.h_ru_nlos.norm(), ch.delta_ru_nlos, 1e-18);
  EXPECT_NEAR(s.h_bu.norm(), 1e-3, 1e-15);
  const CVec want = std::sqrt(20.0 / 21.0) * s.h_ru_los + std::sqrt(1.0 / 21.0) * s.h_ru_nlos;
  EXPECT_LT((s.h_ru_true - want).norm(), 1e-16);
  ch.e_bu = false;
  EXPECT_EQ(SampleRician(g, PathLossParams{}, ch, Vec3(10, 5, 18), Vec3(10, 5, 18), 7).h_bu.norm(),
            0.0);
}

TEST(DeriveSeed, DistinctAcrossIndices) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(DeriveSeed(5, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(DeriveSeed(5, 3), DeriveSeed(5, 3));
  EXPECT_NE(DeriveSeed(5, 3), DeriveSeed(6, 3));
}

TEST(Params, ValidationRejectsBadValues) {
  ChannelParams ch;
  ch.beta = 1.5;
  EXPECT_THROW(ch.Validate(), DomainError);
  ArrayGeometry g;
  g.ris_side = 0;
  EXPECT_THROW(g.Validate(), DomainError);
  PathLossParams pl;
  pl.alpha = 0.0;
  EXPECT_THROW(pl.Validate(), DomainError);
}

}  // namespace
}  // namespace risbf
