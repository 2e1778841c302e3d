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

#include "risbf/experiment_config.hpp"

#include <gtest/gtest.h>

namespace risbf {
namespace {

using nlohmann::json;

std::string ErrorOf(const std::string& text) {
  try {
    ParseConfigText(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseConfig, EmptyObjectGivesDefaults) {
  const ExperimentConfig c = ParseConfigText("{}");
  EXPECT_EQ(c.experiment, ExperimentKind::kSnrVsN);
  EXPECT_EQ(c.geometry.bs_anchor, Vec3(0, 0, 25));
  EXPECT_EQ(c.geometry.ris_anchor, Vec3(2, -2, 26));
  EXPECT_EQ(c.ue_estimate, Vec3(10, 5, 18));
  EXPECT_EQ(c.geometry.num_bs_antennas, 32);
  EXPECT_DOUBLE_EQ(c.geometry.d_bs, 0.005);
  EXPECT_DOUBLE_EQ(c.channel.kappa_r, 20.0);
  EXPECT_DOUBLE_EQ(c.path_loss.zeta0, 1e-3);
  EXPECT_DOUBLE_EQ(c.path_loss.alpha, 2.2);
  EXPECT_DOUBLE_EQ(c.channel.delta_ru_nlos, 1e-4);
  EXPECT_DOUBLE_EQ(c.channel.beta, 1.0);
  EXPECT_NEAR(c.transmit_power, 0.50118723362727224, 1e-15);
  EXPECT_NEAR(c.noise_power, 1e-11, 1e-25);
  EXPECT_DOUBLE_EQ(c.eps_r, 1e-4);
  EXPECT_EQ(c.trials, 50000);
  EXPECT_NEAR(c.channel.wavelength, kSpeedOfLight / 60e9, 1e-18);
}

TEST(ParseConfig, PowerStringsAndUnits) {
  const ExperimentConfig c = ParseConfigText(R"({"power": {"P_T": "27 dBm", "sigma_n2": "-80 dBm"}})");
  EXPECT_NEAR(c.transmit_power, 0.5012, 1e-4);
  EXPECT_NEAR(ParsePower("500 mW"), 0.5, 1e-15);
  EXPECT_NEAR(ParsePower("0.25 W"), 0.25, 1e-15);
  EXPECT_NEAR(ParsePower("0.25"), 0.25, 1e-15);
  EXPECT_NEAR(ParseRatio("-30 dB"), 1e-3, 1e-15);
  EXPECT_THROW(ParsePower("27 furlongs"), ConfigError);
}

TEST(ParseConfig, UnknownKeysNameTheirPath) {
  EXPECT_EQ(ErrorOf(R"({"channel": {"x": 1}})"), "config.channel.x: unknown key");
  EXPECT_EQ(ErrorOf(R"({"bogus": true})"), "config.bogus: unknown key");
}

TEST(ParseConfig, TypeErrorsNameTheirPath) {
  EXPECT_EQ(ErrorOf(R"({"channel": {"alpha": "steep"}})").rfind("config.channel.alpha:", 0), 0u);
  EXPECT_EQ(ErrorOf(R"({"L": [2, 2.5]})").rfind("config.L[1]:", 0), 0u);
  EXPECT_EQ(ErrorOf(R"({"layout": {"ue_estimate": [1, 2]}})").rfind("config.layout.ue_estimate:", 0),
            0u);
  EXPECT_EQ(ErrorOf(R"({"experiment": "fig10"})").rfind("config.experiment:", 0), 0u);
  EXPECT_FALSE(ErrorOf("{not json").empty());
}

TEST(ParseConfig, RangeValidation) {
  EXPECT_THROW(ParseConfigText(R"({"channel": {"beta": 2}})"), ConfigError);
  EXPECT_THROW(ParseConfigText(R"({"eps_dp": [-0.1]})"), ConfigError);
  EXPECT_THROW(ParseConfigText(R"({"solver": {"trials": 0}})"), ConfigError);
}

TEST(ParseConfig, PhaseSetVariants) {
  const ExperimentConfig a = ParseConfigText(R"({"phase_set": {"kind": "interval", "upper": 1.5}})");
  EXPECT_EQ(a.phase_set.kind, PhaseSetKind::kInterval);
  EXPECT_DOUBLE_EQ(a.phase_set.upper, 1.5);
  const ExperimentConfig b = ParseConfigText(R"({"phase_set": {"kind": "discrete", "levels": 8}})");
  EXPECT_EQ(b.phase_set.levels, 8);
  EXPECT_THROW(ParseConfigText(R"({"phase_set": {"kind": "discrete", "upper": 1}})"), ConfigError);
}

TEST(ParseConfig, EchoRoundTrips) {
  ExperimentConfig c = ParseConfigText(
      R"({"experiment": "restricted_set", "L": [3], "eps_dp": [0.2], "solver": {"seed": 99, "phase_solver": "bnb"},
          "channel": {"carrier_hz": 28e9, "zeta0": "-20 dB"}, "position_sweep": {"axis": "z", "values": [17]}})");
  const json echo = ConfigToJson(c);
  const ExperimentConfig back = ParseConfigJson(echo);
  EXPECT_EQ(ConfigToJson(back), echo);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.solver, PhaseSolver::kBnb);
  EXPECT_NEAR(back.path_loss.zeta0, 1e-2, 1e-15);
  EXPECT_NEAR(back.channel.wavelength, kSpeedOfLight / 28e9, 1e-15);
  EXPECT_EQ(back.position_axis, 'z');
  // Manifests are accepted as configs.
  const ExperimentConfig from_manifest =
      ParseConfigJson(json{{"manifest_version", 1}, {"config", echo}});
  EXPECT_EQ(ConfigToJson(from_manifest), echo);
}

TEST(ExperimentKind, NamesRoundTrip) {
  for (ExperimentKind k : {ExperimentKind::kBoundSweep, ExperimentKind::kBoundVsPosition,
                           ExperimentKind::kSnrVsN, ExperimentKind::kSnrVsEps,
                           ExperimentKind::kConvergence, ExperimentKind::kRestrictedSet}) {
    EXPECT_EQ(ParseExperimentKind(ToString(k)), k);
  }
}

}  // namespace
}  // namespace risbf
