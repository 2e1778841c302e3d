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

#include "risbf/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "risbf/csi_error_bound.hpp"
#include "risbf/kernels.hpp"

namespace risbf {

namespace {

using Metrics = std::vector<std::pair<std::string, double>>;

struct Task {
  std::string key;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics;  // reported with NaN on failure
  std::function<Metrics()> run;
};

std::string Num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

std::string PointKey(int ris_side, double eps_dp) {
  return "N=" + std::to_string(ris_side * ris_side) + ";eps_dp=" + Num(eps_dp);
}

ArrayGeometry GeometryFor(const ExperimentConfig& c, int ris_side) {
  ArrayGeometry g = c.geometry;
  g.ris_side = ris_side;
  return g;
}

double CsiRadius(const ExperimentConfig& c, int ris_side, double eps_dp, const Vec3& p_hat) {
  return CsiErrorBound(GeometryFor(c, ris_side), c.channel, c.path_loss, p_hat, eps_dp)
      .eps_total;
}

Metrics BoundPoint(const ExperimentConfig& c, int ris_side, double eps_dp, const Vec3& p_hat,
                   std::uint64_t seed) {
  const ArrayGeometry g = GeometryFor(c, ris_side);
  const BoundResult b = CsiErrorBound(g, c.channel, c.path_loss, p_hat, eps_dp);
  const double mc = MonteCarloBound(g, c.path_loss, c.channel, p_hat, eps_dp, c.trials, seed);
  return {{"eps_theory", b.eps_total}, {"eps_empirical", mc}, {"omega_max", b.omega_max}};
}

Metrics SnrPoint(const ExperimentConfig& c, int ris_side, double eps_dp, std::uint64_t seed) {
  RobustInputs in = MakeRobustInputs(c, ris_side, eps_dp);
  in.seed = seed;
  in.phase_set = PhaseSet::Full();
  const RunResult sdr = RunAlgorithm1(in, PhaseSolver::kSdr);
  const RunResult bnb = RunAlgorithm1(in, PhaseSolver::kBnb);
  const BaselineResult b1 = NonRobustBaseline(in);
  const FixedBeamResult b1_worst =
      FixedBeamWorstCase(b1.theta, b1.w, in.h_br, in.h_hat, in.eps_dh, in.delta_bu,
                         in.transmit_power, in.noise_power);
  return {{"eps_dh", in.eps_dh},
          {"snr_robust_sdr", sdr.worst_case_snr},
          {"snr_robust_bnb", bnb.worst_case_snr},
          {"snr_b1", b1_worst.snr},
          {"iterations_sdr", static_cast<double>(sdr.iterations.size())},
          {"iterations_bnb", static_cast<double>(bnb.iterations.size())}};
}

Metrics RestrictedPoint(const ExperimentConfig& c, int ris_side, double eps_dp, double upper,
                        std::uint64_t seed) {
  RobustInputs in = MakeRobustInputs(c, ris_side, eps_dp);
  in.seed = seed;
  in.phase_set = PhaseSet::Full();
  const RunResult full = RunAlgorithm1(in, PhaseSolver::kSdr);
  const PhaseSet set = PhaseSet::Interval(0.0, upper);
  const RunResult rounded = EvaluatePhases(in, ArgumentRounding(full.theta, set, in.beta));
  in.phase_set = set;
  const RunResult bnb = RunAlgorithm1(in, PhaseSolver::kBnb);
  return {{"snr_bnb_restricted", bnb.worst_case_snr},
          {"snr_rounded_full", rounded.worst_case_snr},
          {"snr_full_sdr", full.worst_case_snr}};
}

std::vector<ResultRow> ConvergenceRows(const ExperimentConfig& c, int ris_side, double eps_dp,
                                       std::uint64_t seed) {
  RobustInputs in = MakeRobustInputs(c, ris_side, eps_dp);
  in.seed = seed;
  const std::string key = PointKey(ris_side, eps_dp);
  std::vector<ResultRow> rows;
  const RunResult run = RunAlgorithm1(in, c.solver);
  for (const IterationRecord& rec : run.iterations) {
    const std::string k = key + ";t=" + std::to_string(rec.index);
    rows.push_back({k, "objective", rec.objective, seed, "ok", 0.0});
    rows.push_back({k, "mu", rec.mu, seed, "ok", 0.0});
  }
  rows.push_back({key, "worst_case_snr", run.worst_case_snr, seed, "ok", 0.0});

  // Random starts, padded with their final value to a common length.
  std::vector<std::vector<double>> traces;
  in.init = InitialPhase::kRandom;
  for (int r = 0; r < c.random_starts; ++r) {
    in.seed = DeriveSeed(seed, static_cast<std::uint64_t>(r) + 1);
    std::vector<double> trace;
    for (const IterationRecord& rec : RunAlgorithm1(in, c.solver).iterations) {
      trace.push_back(rec.objective);
    }
    traces.push_back(std::move(trace));
  }
  size_t length = 0;
  for (const auto& t : traces) length = std::max(length, t.size());
  for (size_t i = 0; i < length; ++i) {
    double sum = 0.0;
    for (const auto& t : traces) sum += t[std::min(i, t.size() - 1)];
    rows.push_back({key + ";t=" + std::to_string(i + 1), "objective_random_mean",
                    sum / static_cast<double>(traces.size()), seed, "ok", 0.0});
  }
  return rows;
}

std::vector<Task> BuildTasks(const ExperimentConfig& c) {
  std::vector<Task> tasks;
  std::uint64_t index = 0;
  const auto next_seed = [&] { return DeriveSeed(c.seed, index++); };
  switch (c.experiment) {
    case ExperimentKind::kBoundSweep:
      for (int l : c.ris_sides) {
        for (double e : c.eps_dp) {
          const std::uint64_t seed = next_seed();
          tasks.push_back({PointKey(l, e), seed, {"eps_theory", "eps_empirical", "omega_max"},
                           [&c, l, e, seed] { return BoundPoint(c, l, e, c.ue_estimate, seed); }});
        }
      }
      break;
    case ExperimentKind::kBoundVsPosition: {
      const int axis = c.position_axis - 'x';
      for (double v : c.position_values) {
        for (int l : c.ris_sides) {
          for (double e : c.eps_dp) {
            const std::uint64_t seed = next_seed();
            Vec3 p = c.ue_estimate;
            p(axis) = v;
            tasks.push_back({std::string(1, c.position_axis) + "=" + Num(v) + ";" + PointKey(l, e),
                             seed, {"eps_theory", "eps_empirical", "omega_max"},
                             [&c, l, e, p, seed] { return BoundPoint(c, l, e, p, seed); }});
          }
        }
      }
      break;
    }
    case ExperimentKind::kSnrVsN:
    case ExperimentKind::kSnrVsEps: {
      const std::vector<std::string> metrics = {"eps_dh", "snr_robust_sdr", "snr_robust_bnb",
                                                "snr_b1", "iterations_sdr", "iterations_bnb"};
      const bool by_n = c.experiment == ExperimentKind::kSnrVsN;
      const size_t outer = by_n ? c.eps_dp.size() : c.ris_sides.size();
      const size_t inner = by_n ? c.ris_sides.size() : c.eps_dp.size();
      for (size_t i = 0; i < outer; ++i) {
        for (size_t j = 0; j < inner; ++j) {
          const int l = by_n ? c.ris_sides[j] : c.ris_sides[i];
          const double e = by_n ? c.eps_dp[i] : c.eps_dp[j];
          const std::uint64_t seed = next_seed();
          tasks.push_back({PointKey(l, e), seed, metrics,
                           [&c, l, e, seed] { return SnrPoint(c, l, e, seed); }});
        }
      }
      break;
    }
    case ExperimentKind::kConvergence:
      break;  // handled row-wise below
    case ExperimentKind::kRestrictedSet:
      for (int l : c.ris_sides) {
        for (double e : c.eps_dp) {
          for (double u : c.restricted_uppers) {
            const std::uint64_t seed = next_seed();
            tasks.push_back({PointKey(l, e) + ";upper=" + Num(u), seed,
                             {"snr_bnb_restricted", "snr_rounded_full", "snr_full_sdr"},
                             [&c, l, e, u, seed] { return RestrictedPoint(c, l, e, u, seed); }});
          }
        }
      }
      break;
  }
  return tasks;
}

template <typename Fn>
void ParallelFor(size_t count, int threads, Fn&& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string CsvNumber(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

int ResultTable::Failures() const {
  int n = 0;
  for (const auto& r : rows) n += r.status != "ok";
  return n;
}

RobustInputs MakeRobustInputs(const ExperimentConfig& c, int ris_side, double eps_dp) {
  const ArrayGeometry g = GeometryFor(c, ris_side);
  RobustInputs in;
  in.h_br = BuildBsRisChannel(g, c.path_loss, c.channel.wavelength);
  in.h_hat = ReconstructRisUeLos(g, c.path_loss, c.channel.wavelength, c.ue_estimate);
  in.eps_dh = CsiRadius(c, ris_side, eps_dp, c.ue_estimate);
  in.beta = c.channel.beta;
  in.phase_set = c.phase_set;
  in.transmit_power = c.transmit_power;
  in.noise_power = c.noise_power;
  in.delta_bu = c.channel.e_bu ? c.channel.delta_bu : 0.0;
  in.eps_r = c.eps_r;
  in.tol_bnb = c.tol_bnb;
  in.max_bnb_nodes = c.max_bnb_nodes;
  in.max_iterations = c.max_iterations;
  in.seed = c.seed;
  in.init = c.init;
  return in;
}

ResultTable RunExperiment(const ExperimentConfig& config, const RunOptions& options) {
  config.Validate();
  using Clock = std::chrono::steady_clock;
  std::vector<std::vector<ResultRow>> slots;

  if (config.experiment == ExperimentKind::kConvergence) {
    struct Point {
      int l;
      double e;
      std::uint64_t seed;
    };
    std::vector<Point> points;
    std::uint64_t index = 0;
    for (int l : config.ris_sides) {
      for (double e : config.eps_dp) points.push_back({l, e, DeriveSeed(config.seed, index++)});
    }
    slots.resize(points.size());
    ParallelFor(points.size(), options.threads, [&](size_t i) {
      const Point& p = points[i];
      const auto start = Clock::now();
      try {
        slots[i] = ConvergenceRows(config, p.l, p.e, p.seed);
      } catch (const std::exception& ex) {
        slots[i] = {{PointKey(p.l, p.e), "objective", std::numeric_limits<double>::quiet_NaN(),
                     p.seed, std::string("error: ") + ex.what(), 0.0}};
      }
      if (options.timing) {
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        for (auto& r : slots[i]) r.wall_ms = ms;
      }
    });
  } else {
    const std::vector<Task> tasks = BuildTasks(config);
    slots.resize(tasks.size());
    ParallelFor(tasks.size(), options.threads, [&](size_t i) {
      const Task& task = tasks[i];
      const auto start = Clock::now();
      std::vector<ResultRow> rows;
      try {
        for (const auto& [metric, value] : task.run()) {
          rows.push_back({task.key, metric, value, task.seed, "ok", 0.0});
        }
      } catch (const std::exception& ex) {
        rows.clear();
        for (const auto& metric : task.metrics) {
          rows.push_back({task.key, metric, std::numeric_limits<double>::quiet_NaN(), task.seed,
                          std::string("error: ") + ex.what(), 0.0});
        }
      }
      if (options.timing) {
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        for (auto& r : rows) r.wall_ms = ms;
      }
      slots[i] = std::move(rows);
    });
  }

  ResultTable table;
  for (auto& slot : slots) {
    for (auto& row : slot) table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteCsv(const ResultTable& table, std::ostream& out) {
  out << "sweep_key,metric,value,seed,status,wall_ms\n";
  for (const auto& r : table.rows) {
    out << CsvField(r.sweep_key) << ',' << CsvField(r.metric) << ',' << CsvNumber(r.value) << ','
        << r.seed << ',' << CsvField(r.status) << ',' << CsvNumber(r.wall_ms) << '\n';
  }
}

nlohmann::json BuildManifest(const ExperimentConfig& config, const ResultTable& table,
                             const std::string& csv_name) {
  return {
      {"manifest_version", kManifestVersion},
      {"experiment", ToString(config.experiment)},
      {"seed", config.seed},
      {"config", ConfigToJson(config)},
      {"outputs", {{"csv", csv_name}, {"rows", table.rows.size()}, {"failures", table.Failures()}}},
      {"csv_columns", {"sweep_key", "metric", "value", "seed", "status", "wall_ms"}},
      {"versions",
       {{"risbf", kLibraryVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
      {"kernel_isa", kernels::IsaName(kernels::ActiveIsa())},
  };
}

}  // namespace risbf
