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

#include <cmath>

#include <gtest/gtest.h>

namespace risbf {
namespace {

// Central-difference Hessian of |x|^(-a).
Mat3 NumericHessian(const Vec3& x, double a) {
  const double h = 1e-4 * x.norm();
  const auto f = [a](const Vec3& y) { return std::pow(y.norm(), -a); };
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec3 ei = Vec3::Zero(), ej = Vec3::Zero();
      ei(i) = h;
      ej(j) = h;
      out(i, j) = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)) / (4 * h * h);
    }
  }
  return out;
}

// Largest value of -c tr(S P)^2 + tr(R P) over PSD P with tr(P) <= eps^2,
// by projected gradient ascent on the spectraplex.
double ProjectedGradientBound(const BoundMatrices& bm) {
  const double e2 = bm.eps_dp * bm.eps_dp;
  const double lip = 2.0 * bm.quartic_coeff * bm.s.squaredNorm() * e2 + bm.r.norm();
  const double step = 1.0 / lip;
  Mat3 p = Mat3::Identity() * e2 / 3.0;
  const auto value = [&](const Mat3& q) {
    const double t = (bm.s * q).trace();
    return (bm.r * q).trace() - bm.quartic_coeff * t * t;
  };
  for (int it = 0; it < 200000; ++it) {
    const Mat3 grad = bm.r - 2.0 * bm.quartic_coeff * (bm.s * p).trace() * bm.s;
    Eigen::SelfAdjointEigenSolver<Mat3> eig(p + step * grad);
    Eigen::Vector3d lam = eig.eigenvalues().cwiseMax(0.0);
    if (lam.sum() > e2) {
      // Project onto {lam >= 0, sum <= e2} by a shift.
      double lo = 0.0, hi = lam.maxCoeff();
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((lam.array() - mid).cwiseMax(0.0).sum() > e2 ? lo : hi) = mid;
      }
      lam = (lam.array() - hi).cwiseMax(0.0);
    }
    p = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  }
  return value(p);
}

TEST(InversePowerHessian, MatchesFiniteDifferences) {
  for (double a : {2.2, 1.1}) {
    const Vec3 x(-8.0, -7.0, 8.0);
    const Mat3 h = InversePowerHessian(x, a);
    const Mat3 n = NumericHessian(x, a);
    EXPECT_LT((h - n).norm(), 1e-6 * h.norm()) << "a=" << a;
  }
}

TEST(BoundMatrices, FrozenValuesForSixteenElements) {
  ArrayGeometry g;
  g.ris_side = 4;
  const BoundMatrices bm =
      BuildBoundMatrices(g, PathLossParams{}, kSpeedOfLight / 60e9, Vec3(10, 5, 18), 0.1);
  Mat3 s_want, r_want;
  s_want << 3.8535211211402586e-07, -1.4357899026197877e-08, 3.7225802009307139e-07,
      -1.4357899026197877e-08, 3.2951335219998398e-08, 1.4474442077136157e-08,
      3.7225802009307139e-07, 1.4474442077136157e-08, 3.8439294714714377e-07;
  r_want << 0.035641528161637161, -0.0012100946207080122, 0.034165854698998015,
      -0.0012100946207080122, 0.0031380120702575727, 0.0012134306378879516,
      0.034165854698998015, 0.0012134306378879516, 0.035547366618429235;
  EXPECT_LT((bm.s - s_want).norm(), 1e-12 * s_want.norm());
  EXPECT_LT((bm.r - r_want).norm(), 1e-12 * r_want.norm());
  EXPECT_EQ(bm.xi.size(), 16u);
}

TEST(BoundMatrices, IndependentAssembly) {
  ArrayGeometry g;
  g.ris_side = 2;
  const double lambda = kSpeedOfLight / 60e9;
  const Vec3 p(10, 5, 18);
  const double eps = 0.3, a = 2.2;
  const BoundMatrices bm = BuildBoundMatrices(g, PathLossParams{}, lambda, p, eps);
  Mat3 s = Mat3::Zero(), r = Mat3::Zero();
  const Vec3 u1 = (g.ris_anchor - p).normalized();
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const Vec3 x = g.ris_anchor + Vec3(l * g.d_ris, 0, k * g.d_ris) - p;
      const double d = x.norm();
      const Vec3 eta = u1 - x / d;
      const Mat3 xi = eta * eta.transpose();
      s += std::pow((d - eps) * d, -a / 4) * xi;
      r += 0.5 * NumericHessian(x, a) - std::pow(d, -a / 2) * NumericHessian(x, a / 2) +
           std::pow(2 * kPi / lambda, 2) * std::pow((d - eps) * d, -a / 2) * xi;
    }
  }
  EXPECT_LT((bm.s - s).norm(), 1e-12 * s.norm());
  EXPECT_LT((bm.r - r).norm(), 1e-5 * r.norm());
  EXPECT_NEAR(bm.quartic_coeff, 4 * std::pow(kPi, 4) / (3 * std::pow(lambda, 4) * 4), 1e-3);
}

TEST(BoundProgram, MatchesProjectedGradient) {
  for (int side : {2, 4}) {
    ArrayGeometry g;
    g.ris_side = side;
    const BoundMatrices bm =
        BuildBoundMatrices(g, PathLossParams{}, kSpeedOfLight / 60e9, Vec3(10, 5, 18), 0.3);
    const double sdp = SolveBoundProgram(bm);
    const double pg = ProjectedGradientBound(bm);
    EXPECT_NEAR(sdp, pg, 1e-6 * pg) << "L=" << side;
  }
}

TEST(BoundProgram, DominatesSampledSurrogate) {
  ArrayGeometry g;
  g.ris_side = 4;
  const BoundMatrices bm =
      BuildBoundMatrices(g, PathLossParams{}, kSpeedOfLight / 60e9, Vec3(10, 5, 18), 0.5);
  const double omega = SolveBoundProgram(bm);
  double best = 0.0;
  for (std::uint64_t t = 0; t < 20000; ++t) {
    best = std::max(best, SurrogateObjective(bm, SampleInBall(0.5, t)));
  }
  EXPECT_GE(omega, best);
}

TEST(BoundProgram, ZeroRadiusGivesZero) {
  const BoundMatrices bm =
      BuildBoundMatrices(ArrayGeometry{}, PathLossParams{}, 0.005, Vec3(10, 5, 18), 0.0);
  EXPECT_EQ(SolveBoundProgram(bm), 0.0);
}

TEST(CsiErrorBound, FrozenTotalAndComposition) {
  ArrayGeometry g;
  g.ris_side = 4;
  const ChannelParams ch;
  const PathLossParams pl;
  const BoundResult b = CsiErrorBound(g, ch, pl, Vec3(10, 5, 18), 0.1);
  EXPECT_NEAR(b.omega_max, 0.00069685675491064391, 1e-9 * b.omega_max);
  EXPECT_NEAR(b.eps_total, 0.0010133678481443864, 1e-9 * b.eps_total);
  const double w = std::sqrt(20.0 / 21.0);
  EXPECT_NEAR(b.eps_total,
              w * std::sqrt(1e-3 * b.omega_max) + (1 - w) * b.h_hat_norm +
                  std::sqrt(1.0 / 21.0) * 1e-4,
              1e-15);
}

TEST(CsiErrorBound, BallTouchingRisIsRejected) {
  EXPECT_THROW(CsiErrorBound(ArrayGeometry{}, ChannelParams{}, PathLossParams{},
                             Vec3(2.0, -1.9, 26.0), 0.2),
               DomainError);
}

TEST(MonteCarlo, StaysBelowTheoryAndIsDeterministic) {
  ArrayGeometry g;
  g.ris_side = 2;
  const ChannelParams ch;
  const PathLossParams pl;
  const double mc1 = MonteCarloBound(g, pl, ch, Vec3(10, 5, 18), 0.3, 2000, 9);
  const double mc2 = MonteCarloBound(g, pl, ch, Vec3(10, 5, 18), 0.3, 2000, 9);
  EXPECT_EQ(mc1, mc2);
  EXPECT_LE(mc1, CsiErrorBound(g, ch, pl, Vec3(10, 5, 18), 0.3).eps_total);
  EXPECT_THROW(MonteCarloBound(g, pl, ch, Vec3(10, 5, 18), 0.3, 0, 9), DomainError);
}

TEST(SampleInBall, InsideRadius) {
  for (std::uint64_t s = 0; s < 1000; ++s) EXPECT_LE(SampleInBall(0.3, s).norm(), 0.3);
}

}  // namespace
}  // namespace risbf
