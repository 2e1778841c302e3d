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

// Batch driver: bound, optimize, sweep and convergence studies.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "risbf/algorithm1.hpp"
#include "risbf/experiment_config.hpp"
#include "risbf/experiments.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<std::string> solver;
  bool timing = false;
  int threads = 0;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config or run manifest");
  cmd->add_option("--seed", flags.seed, "Override the master seed");
  cmd->add_option("--out-dir", flags.out_dir, "Directory for CSV and manifest output");
  cmd->add_option("--solver", flags.solver, "Phase solver")
      ->check(CLI::IsMember({"sdr", "bnb"}));
  cmd->add_flag("--timing", flags.timing, "Record wall-clock time per point");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

risbf::ExperimentConfig LoadConfig(const CommonFlags& flags) {
  risbf::ExperimentConfig config = flags.config_path.empty()
                                       ? risbf::ParseConfigJson(json::object())
                                       : risbf::ParseConfigFile(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.solver) config.solver = risbf::ParsePhaseSolver(*flags.solver);
  config.Validate();
  return config;
}

void WriteJson(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

int RunStudy(risbf::ExperimentConfig config, const CommonFlags& flags) {
  risbf::RunOptions options;
  options.threads = flags.threads;
  options.timing = flags.timing;
  const risbf::ResultTable table = risbf::RunExperiment(config, options);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  const std::string stem = risbf::ToString(config.experiment);
  const std::string csv_name = stem + ".csv";
  {
    std::ofstream out(dir / csv_name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / csv_name).string());
    risbf::WriteCsv(table, out);
  }
  WriteJson(dir / (stem + ".manifest.json"), risbf::BuildManifest(config, table, csv_name));

  const int failures = table.Failures();
  std::cout << stem << ": " << table.rows.size() << " rows, " << failures << " failed -> "
            << (dir / csv_name).string() << '\n';
  return failures > 0 ? kExitPartial : kExitOk;
}

json ComplexArray(const risbf::CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

int RunOptimize(const risbf::ExperimentConfig& config, const CommonFlags& flags, int ris_side,
                double eps_dp) {
  risbf::RobustInputs inputs = risbf::MakeRobustInputs(config, ris_side, eps_dp);
  const risbf::RunResult run = risbf::RunAlgorithm1(inputs, config.solver);

  json iterations = json::array();
  for (const auto& rec : run.iterations) {
    iterations.push_back({{"t", rec.index},
                          {"mu", rec.mu},
                          {"objective", rec.objective},
                          {"worst_case_snr", rec.worst_case},
                          {"status", rec.solver_status},
                          {"accepted", rec.accepted}});
  }
  json phases = json::array();
  for (Eigen::Index i = 0; i < run.theta.size(); ++i) phases.push_back(std::arg(run.theta(i)));

  const json doc = {{"manifest_version", risbf::kManifestVersion},
                    {"config", risbf::ConfigToJson(config)},
                    {"point", {{"L", ris_side}, {"eps_dp", eps_dp}}},
                    {"solver", risbf::ToString(config.solver)},
                    {"eps_dh", inputs.eps_dh},
                    {"mu", run.mu},
                    {"worst_case_snr", run.worst_case_snr},
                    {"worst_case_snr_db", 10.0 * std::log10(run.worst_case_snr)},
                    {"converged", run.converged},
                    {"theta_phase", phases},
                    {"w", ComplexArray(run.w)},
                    {"iterations", iterations}};
  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  WriteJson(dir / "optimize.json", doc);
  std::printf("N=%d eps_dp=%g solver=%s: worst-case SNR %.6g (%.3f dB), %zu iterations%s\n",
              ris_side * ris_side, eps_dp, risbf::ToString(config.solver), run.worst_case_snr,
              10.0 * std::log10(run.worst_case_snr), run.iterations.size(),
              run.converged ? "" : " (not converged)");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust RIS beamforming benchmarks"};
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* bound = app.add_subcommand("bound", "CSI error bound: theory vs Monte Carlo");
  CLI::App* optimize = app.add_subcommand("optimize", "Single robust design");
  CLI::App* sweep = app.add_subcommand("sweep", "Run the experiment named in the config");
  CLI::App* convergence = app.add_subcommand("convergence", "Per-iteration objective traces");
  for (CLI::App* cmd : {bound, optimize, sweep, convergence}) AddCommonFlags(cmd, flags);

  bool by_position = false;
  bound->add_flag("--position", by_position, "Sweep the UE estimate along position_sweep");
  std::optional<int> side;
  std::optional<double> eps_dp;
  optimize->add_option("--ris-side", side, "RIS side length L (default: first entry of L)")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--eps-dp", eps_dp, "Location error radius (default: first eps_dp)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }

  try {
    risbf::ExperimentConfig config = LoadConfig(flags);
    if (*bound) {
      config.experiment =
          by_position ? risbf::ExperimentKind::kBoundVsPosition : risbf::ExperimentKind::kBoundSweep;
      return RunStudy(config, flags);
    }
    if (*convergence) {
      config.experiment = risbf::ExperimentKind::kConvergence;
      return RunStudy(config, flags);
    }
    if (*sweep) return RunStudy(config, flags);
    const int l = side.value_or(config.ris_sides.empty() ? config.geometry.ris_side
                                                         : config.ris_sides.front());
    const double e = eps_dp.value_or(config.eps_dp.empty() ? 0.3 : config.eps_dp.front());
    return RunOptimize(config, flags, l, e);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitFatal;
  }
}
