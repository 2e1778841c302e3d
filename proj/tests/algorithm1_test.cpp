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

#include "risbf/algorithm1.hpp"

#include <random>

#include <gtest/gtest.h>

#include "risbf/csi_error_bound.hpp"
#include "risbf/geometry_channel.hpp"
#include "test_support.hpp"

namespace risbf {
namespace {

RobustInputs GeometricInputs(int side, double eps_dp) {
  ArrayGeometry g;
  g.ris_side = side;
  const ChannelParams ch;
  const PathLossParams pl;
  const Vec3 p_hat(10, 5, 18);
  RobustInputs in;
  in.h_br = BuildBsRisChannel(g, pl, ch.wavelength);
  in.h_hat = ReconstructRisUeLos(g, pl, ch.wavelength, p_hat);
  in.eps_dh = CsiErrorBound(g, ch, pl, p_hat, eps_dp).eps_total;
  in.transmit_power = DbmToWatts(27.0);
  in.noise_power = DbmToWatts(-80.0);
  return in;
}

RobustInputs RandomInputs(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RobustInputs in;
  in.h_br = testing::RandomComplex(n, m, rng);
  in.h_hat = testing::RandomComplex(n, rng);
  in.eps_dh = 0.2 * in.h_hat.norm();
  in.transmit_power = 1.0;
  in.noise_power = 1.0;
  return in;
}

TEST(Parsing, SolverAndInitNames) {
  EXPECT_EQ(ParsePhaseSolver("sdr"), PhaseSolver::kSdr);
  EXPECT_EQ(ParsePhaseSolver("bnb"), PhaseSolver::kBnb);
  EXPECT_THROW(ParsePhaseSolver("cvx"), DomainError);
  EXPECT_EQ(ParseInitialPhase(ToString(InitialPhase::kNominal)), InitialPhase::kNominal);
}

TEST(RobustInputs, ValidateRejectsBadPower) {
  RobustInputs in = RandomInputs(3, 2, 1);
  in.noise_power = 0.0;
  EXPECT_THROW(in.Validate(), DomainError);
}

TEST(RunAlgorithm1, MonotoneActiveAndUnitBeam) {
  for (PhaseSolver solver : {PhaseSolver::kSdr, PhaseSolver::kBnb}) {
    const RobustInputs in = GeometricInputs(2, 0.3);
    const RunResult r = RunAlgorithm1(in, solver);
    ASSERT_FALSE(r.iterations.empty());
    EXPECT_TRUE(r.converged);
    for (size_t t = 1; t < r.iterations.size(); ++t) {
      EXPECT_GE(r.iterations[t].objective, r.iterations[t - 1].objective * (1 - 1e-6));
    }
    EXPECT_NEAR(r.w.norm(), 1.0, 1e-10);
    EXPECT_NEAR(r.delta_h.norm(), in.eps_dh, 1e-6 * in.eps_dh);
    for (Eigen::Index i = 0; i < r.theta.size(); ++i) EXPECT_NEAR(std::abs(r.theta(i)), 1.0, 1e-12);
  }
}

TEST(RunAlgorithm1, SdrRejectsRestrictedSets) {
  RobustInputs in = RandomInputs(3, 2, 2);
  in.phase_set = PhaseSet::Discrete(4);
  EXPECT_THROW(RunAlgorithm1(in, PhaseSolver::kSdr), DomainError);
}

TEST(RunAlgorithm1, BnbRespectsRestrictedSet) {
  RobustInputs in = GeometricInputs(2, 0.3);
  in.phase_set = PhaseSet::Interval(0.0, kPi / 2);
  const RunResult r = RunAlgorithm1(in, PhaseSolver::kBnb);
  for (Eigen::Index i = 0; i < r.theta.size(); ++i) {
    EXPECT_TRUE(in.phase_set.Contains(std::arg(r.theta(i)), 1e-9));
  }
}

TEST(RunAlgorithm1, DeterministicForFixedSeed) {
  RobustInputs in = RandomInputs(4, 3, 3);
  in.init = InitialPhase::kRandom;
  in.seed = 11;
  const RunResult a = RunAlgorithm1(in, PhaseSolver::kSdr);
  const RunResult b = RunAlgorithm1(in, PhaseSolver::kSdr);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.worst_case_snr, b.worst_case_snr);
}

TEST(EvaluatePhases, SaddlePointMatchesFixedBeamWorstCase) {
  RobustInputs in = RandomInputs(4, 3, 4);
  in.delta_bu = 0.05;
  std::mt19937_64 rng(9);
  const CVec theta = testing::RandomPhases(4, 1.0, rng);
  const RunResult e = EvaluatePhases(in, theta);
  const FixedBeamResult fb = FixedBeamWorstCase(theta, e.w, in.h_br, in.h_hat, in.eps_dh,
                                                in.delta_bu, 1.0, 1.0);
  EXPECT_LT(testing::RelErr(e.worst_case_snr, fb.snr), 1e-8);
  EXPECT_NEAR(WorstCaseSnr(theta, e.w, in.h_br, in.h_hat, e.delta_h, e.h_bu, 1.0, 1.0),
              e.worst_case_snr, 1e-10 * e.worst_case_snr);
}

TEST(FixedBeamWorstCase, NoSampledErrorDoesWorse) {
  std::mt19937_64 rng(10);
  const RobustInputs in = RandomInputs(4, 3, 5);
  const CVec theta = testing::RandomPhases(4, 1.0, rng);
  CVec w = testing::RandomComplex(3, rng);
  w.normalize();
  const FixedBeamResult fb = FixedBeamWorstCase(theta, w, in.h_br, in.h_hat, in.eps_dh, 0.0, 1.0, 1.0);
  EXPECT_NEAR(fb.delta_h.norm(), in.eps_dh, 1e-12);
  EXPECT_NEAR(WorstCaseSnr(theta, w, in.h_br, in.h_hat, fb.delta_h, fb.h_bu, 1.0, 1.0), fb.snr,
              1e-10 * std::max(fb.snr, 1e-12));
  for (int k = 0; k < 5000; ++k) {
    CVec d = testing::RandomComplex(4, rng);
    d *= in.eps_dh / d.norm();
    EXPECT_GE(WorstCaseSnr(theta, w, in.h_br, in.h_hat, d, CVec::Zero(3), 1.0, 1.0),
              fb.snr * (1 - 1e-12));
  }
}

TEST(NonRobustBaseline, MaximizesNominalGain) {
  const RobustInputs in = GeometricInputs(2, 0.3);
  const BaselineResult b1 = NonRobustBaseline(in);
  const RunResult robust = RunAlgorithm1(in, PhaseSolver::kSdr);
  const auto nominal = [&](const CVec& theta, const CVec& w) {
    return WorstCaseSnr(theta, w, in.h_br, in.h_hat, CVec::Zero(in.h_hat.size()),
                        CVec::Zero(in.h_br.cols()), 1.0, 1.0);
  };
  EXPECT_GE(nominal(b1.theta, b1.w), nominal(robust.theta, robust.w) * (1 - 1e-6));
  EXPECT_NEAR(b1.w.norm(), 1.0, 1e-12);
}

TEST(InitialPhases, ZeroRandomAndSetMembership) {
  const CVec z = InitialPhases(5, 0.8, PhaseSet::Full(), std::nullopt);
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_EQ(z(i), Complex(0.8, 0.0));
  const PhaseSet set = PhaseSet::Interval(1.0, 2.0);
  const CVec r = InitialPhases(50, 1.0, set, 3u);
  for (Eigen::Index i = 0; i < 50; ++i) EXPECT_TRUE(set.Contains(std::arg(r(i))));
  EXPECT_EQ(r, InitialPhases(50, 1.0, set, 3u));
  const PhaseSet levels = PhaseSet::Discrete(4);
  const CVec d = InitialPhases(20, 1.0, levels, 4u);
  for (Eigen::Index i = 0; i < 20; ++i) EXPECT_TRUE(levels.Contains(std::arg(d(i))));
}

}  // namespace
}  // namespace risbf
