// Copyright 2026 The ACQC Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acqc/evolve.hpp"
#include "acqc/graph.hpp"
#include "acqc/metrics.hpp"
#include "acqc/schedule.hpp"

namespace acqc {

struct Instance {
  std::string id;
  UnitDiskGraph graph;
  std::optional<std::uint64_t> seed;
};

struct ExperimentConfig {
  std::vector<Instance> instances;
  std::vector<Protocol> protocols;
  std::vector<double> times;  // us
  int shots = defaults::kShots;
  std::uint64_t seed = 0;  // sampling seed root
  HardwareLimits limits;
  CostParams cost;
  double c6 = defaults::kC6;
  LimitPolicy limit_policy = LimitPolicy::Report;
  LinearOptions linear;
  EvolutionConfig evolution;
  /// Not part of the config hash: neither changes any result.
  int jobs = 1;
  std::optional<std::string> out_dir;

  void validate() const;
};

/// Sampling seed of one sweep cell; independent of execution order.
std::uint64_t cell_seed(std::uint64_t root, const std::string& instance_id,
                        Protocol protocol, double total_time);

/// FNV-1a over the canonical JSON of every result-relevant setting.
std::string config_hash(const ExperimentConfig& config);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct CellResult {
  std::size_t instance = 0;
  Protocol protocol = Protocol::Smooth;
  double total_time = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when !ok
  EnergyStats stats;
  double ground_population = 0.0;
  std::optional<RunResult> run;
};

struct BoxRow {
  int n_qubits = 0;
  Protocol protocol = Protocol::Smooth;
  double total_time = 0.0;
  BoxSummary ratio;
};

struct SweepResult {
  std::string config_hash;
  std::vector<MisSolution> mis;  // per instance
  std::vector<CellResult> cells;  // instance-major, then protocol, then T
  std::vector<BoxRow> boxes;
  bool all_ok() const;
};

/// Runs every (instance, protocol, T) cell on `config.jobs` workers. Cell
/// failures are recorded, never thrown. When out_dir is set, writes one JSON
/// per cell plus aggregate.csv and boxplot.csv.
SweepResult run_sweep(const ExperimentConfig& config);

std::string aggregate_csv(const ExperimentConfig& config,
                          const SweepResult& result);
std::string boxplot_csv(const ExperimentConfig& config,
                        const SweepResult& result);
nlohmann::json cell_to_json(const ExperimentConfig& config,
                            const SweepResult& result, const CellResult& cell);
std::string cell_file_name(const ExperimentConfig& config,
                           const CellResult& cell);

/// Identification block carried by every output file.
struct OutputMetadata {
  std::string config_hash;
  CostParams cost;
  double c6 = defaults::kC6;
};

/// 16 hex digits of FNV-1a over the compact dump.
std::string hash_json(const nlohmann::json& j);
nlohmann::json metadata_to_json(const OutputMetadata& meta);
/// "# key=value" lines for CSV outputs.
std::string metadata_comment(const OutputMetadata& meta);

/// Fixed-format number used in every text output.
std::string format_number(double v);

}  // namespace acqc
