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

#ifndef RISBF_EXPERIMENTS_HPP_
#define RISBF_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "risbf/experiment_config.hpp"

namespace risbf {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kManifestVersion = 1;

struct ResultRow {
  std::string sweep_key;
  std::string metric;
  double value = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double wall_ms = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  int Failures() const;
};

struct RunOptions {
  int threads = 0;      // 0 picks the hardware concurrency
  bool timing = false;  // wall_ms stays 0 unless set, keeping output stable
};

/// Runs the configured study. Failing points produce rows with status
/// "error: ..." and NaN values; the sweep itself never aborts.
ResultTable RunExperiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Columns: sweep_key,metric,value,seed,status,wall_ms.
void WriteCsv(const ResultTable& table, std::ostream& out);

nlohmann::json BuildManifest(const ExperimentConfig& config, const ResultTable& table,
                             const std::string& csv_name);

/// Robust design inputs for one (L, eps_dp) point of `config`.
RobustInputs MakeRobustInputs(const ExperimentConfig& config, int ris_side, double eps_dp);

}  // namespace risbf

#endif  // RISBF_EXPERIMENTS_HPP_
