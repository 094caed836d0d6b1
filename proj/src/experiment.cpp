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

#include "acqc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "acqc/error.hpp"
#include "acqc/rng.hpp"

namespace acqc {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Format, "cannot write " + path.string());
  }
  out << text;
}

std::string header_lines(const ExperimentConfig& config,
                         const std::string& hash) {
  return metadata_comment({hash, config.cost, config.c6});
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void ExperimentConfig::validate() const {
  if (instances.empty()) {
    throw Error(ErrorKind::Parameter, "no instances configured");
  }
  if (protocols.empty()) {
    throw Error(ErrorKind::Parameter, "no protocols configured");
  }
  if (times.empty()) throw Error(ErrorKind::Parameter, "no times configured");
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorKind::Parameter, "evolution times must be > 0");
    }
  }
  if (shots < 1) throw Error(ErrorKind::Parameter, "shots must be >= 1");
  if (jobs < 1) throw Error(ErrorKind::Parameter, "jobs must be >= 1");
  if (!(c6 > 0.0)) throw Error(ErrorKind::Parameter, "c6 must be > 0");
  limits.validate();
  cost.validate();
  std::set<std::string> ids;
  for (const auto& inst : instances) {
    if (!ids.insert(inst.id).second) {
      throw Error(ErrorKind::Parameter, "duplicate instance id " + inst.id);
    }
    if (inst.graph.n_vertices() > defaults::kSimulationQubitCap) {
      throw Error(ErrorKind::Size, "instance " + inst.id + " has " +
                                       std::to_string(inst.graph.n_vertices()) +
                                       " vertices, above the simulation cap");
    }
  }
}

std::uint64_t cell_seed(std::uint64_t root, const std::string& instance_id,
                        Protocol protocol, double total_time) {
  const std::string key = instance_id + "|" + to_string(protocol) + "|" +
                          format_number(total_time);
  return splitmix64(root ^ fnv1a64(key));
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["instances"] = nlohmann::json::array();
  for (const auto& inst : config.instances) {
    nlohmann::json g = to_json(GraphFile{inst.graph, inst.seed, std::nullopt});
    g["id"] = inst.id;
    j["instances"].push_back(std::move(g));
  }
  j["protocols"] = nlohmann::json::array();
  for (Protocol p : config.protocols) j["protocols"].push_back(to_string(p));
  j["times_us"] = config.times;
  j["shots"] = config.shots;
  j["seed"] = config.seed;
  j["limits"] = limits_to_json(config.limits);
  j["cost"] = {{"A", config.cost.a}, {"B", config.cost.b}};
  j["c6"] = config.c6;
  const char* policy = config.limit_policy == LimitPolicy::Reject ? "reject"
                       : config.limit_policy == LimitPolicy::Clamp
                           ? "clamp"
                           : "report";
  j["limit_policy"] = policy;
  j["linear"] = {{"ramp_fraction", config.linear.ramp_fraction},
                 {"smooth_ramps", config.linear.smooth_ramps}};
  const auto& ev = config.evolution;
  j["evolution"] = {{"dt_max", ev.dt_max ? nlohmann::json(*ev.dt_max)
                                         : nlohmann::json("T/2000")},
                    {"norm_tolerance", ev.norm_tolerance},
                    {"order", ev.order},
                    {"renormalize", ev.renormalize},
                    {"krylov_tolerance", ev.krylov_tolerance},
                    {"krylov_max_dim", ev.krylov_max_dim}};
  return j;
}

std::string hash_json(const nlohmann::json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

std::string config_hash(const ExperimentConfig& config) {
  return hash_json(config_to_json(config));
}

nlohmann::json metadata_to_json(const OutputMetadata& meta) {
  return {{"config_hash", meta.config_hash},
          {"unit_convention", defaults::kUnitConvention},
          {"cost", {{"A", meta.cost.a}, {"B", meta.cost.b}}},
          {"c6", meta.c6}};
}

std::string metadata_comment(const OutputMetadata& meta) {
  std::ostringstream out;
  out << "# config_hash=" << meta.config_hash << "\n";
  out << "# unit_convention=" << defaults::kUnitConvention << "\n";
  out << "# cost_A=" << format_number(meta.cost.a)
      << " cost_B=" << format_number(meta.cost.b) << "\n";
  out << "# c6=" << format_number(meta.c6) << "\n";
  return out.str();
}

bool SweepResult::all_ok() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const CellResult& c) { return c.ok; });
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.config_hash = config_hash(config);

  const std::size_t n_inst = config.instances.size();
  std::vector<std::string> mis_error(n_inst);
  result.mis.resize(n_inst);
  for (std::size_t i = 0; i < n_inst; ++i) {
    try {
      result.mis[i] = solve_mis_exact(config.instances[i].graph, config.cost);
    } catch (const Error& e) {
      mis_error[i] = e.what();
    }
  }

  for (std::size_t i = 0; i < n_inst; ++i) {
    for (Protocol p : config.protocols) {
      for (double t : config.times) {
        CellResult cell;
        cell.instance = i;
        cell.protocol = p;
        cell.total_time = t;
        cell.seed = cell_seed(config.seed, config.instances[i].id, p, t);
        result.cells.push_back(std::move(cell));
      }
    }
  }

  if (config.out_dir) std::filesystem::create_directories(*config.out_dir);

  auto run_cell = [&](CellResult& cell) {
    const Instance& inst = config.instances[cell.instance];
    if (!mis_error[cell.instance].empty()) {
      cell.error = mis_error[cell.instance];
      return;
    }
    try {
      RunRequest req;
      req.protocol = cell.protocol;
      req.total_time = cell.total_time;
      req.limits = config.limits;
      req.cost = config.cost;
      req.c6 = config.c6;
      req.shots = config.shots;
      req.seed = cell.seed;
      req.evolution = config.evolution;
      req.limit_policy = config.limit_policy;
      req.linear = config.linear;
      req.keep_final_state = false;
      RunResult run = run_protocol(inst.graph, result.mis[cell.instance], req);
      std::vector<WeightedEnergy> energies;
      energies.reserve(run.samples.size());
      for (const auto& s : run.samples) {
        energies.push_back({s.energy, static_cast<double>(s.count)});
      }
      cell.stats = approximation_ratio(energies, result.mis[cell.instance]);
      cell.ground_population = run.ground_population;
      cell.run = std::move(run);
      cell.ok = true;
    } catch (const Error& e) {
      cell.error = e.what();
    }
    if (config.out_dir) {
      const auto path =
          std::filesystem::path(*config.out_dir) / cell_file_name(config, cell);
      write_text(path, cell_to_json(config, result, cell).dump(2) + "\n");
    }
  };

  const int workers = std::min<int>(config.jobs,
                                    static_cast<int>(result.cells.size()));
  if (workers <= 1) {
    for (auto& cell : result.cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::string> crashes(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
#ifdef _OPENMP
        // Parallelism lives at the cell level here.
        omp_set_num_threads(1);
#endif
        try {
          for (std::size_t k = next++; k < result.cells.size(); k = next++) {
            run_cell(result.cells[k]);
          }
        } catch (const std::exception& e) {
          crashes[w] = e.what();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& c : crashes) {
      if (!c.empty()) throw std::runtime_error(c);
    }
  }

  // Box summaries of r per (qubit count, protocol, T), successful cells only.
  std::map<std::tuple<int, int, double>, std::vector<double>> groups;
  for (const auto& cell : result.cells) {
    if (!cell.ok) continue;
    const int n = config.instances[cell.instance].graph.n_vertices();
    groups[{n, static_cast<int>(cell.protocol), cell.total_time}].push_back(
        cell.stats.approximation_ratio);
  }
  for (auto& [key, values] : groups) {
    result.boxes.push_back({std::get<0>(key),
                            static_cast<Protocol>(std::get<1>(key)),
                            std::get<2>(key), box_summary(std::move(values))});
  }

  if (config.out_dir) {
    const std::filesystem::path dir(*config.out_dir);
    write_text(dir / "aggregate.csv", aggregate_csv(config, result));
    write_text(dir / "boxplot.csv", boxplot_csv(config, result));
    auto j = config_to_json(config);
    j["meta"] = metadata_to_json({result.config_hash, config.cost, config.c6});
    write_text(dir / "config.json", j.dump(2) + "\n");
  }
  return result;
}

std::string aggregate_csv(const ExperimentConfig& config,
                          const SweepResult& result) {
  std::ostringstream out;
  out << header_lines(config, result.config_hash);
  out << "instance,n_qubits,protocol,T_us,r,ci,min_ratio,ground_pop,"
         "mean_energy,e_mis,shots,status\n";
  for (const auto& cell : result.cells) {
    const Instance& inst = config.instances[cell.instance];
    out << inst.id << ',' << inst.graph.n_vertices() << ','
        << to_string(cell.protocol) << ',' << format_number(cell.total_time);
    if (cell.ok) {
      out << ',' << format_number(cell.stats.approximation_ratio) << ','
          << format_number(cell.stats.ci_half_width) << ','
          << format_number(cell.stats.min_ratio) << ','
          << format_number(cell.ground_population) << ','
          << format_number(cell.stats.mean) << ','
          << format_number(cell.stats.e_mis) << ',' << cell.stats.shots
          << ",ok\n";
    } else {
      out << ",,,,,,,," << "failed\n";
    }
  }
  return out.str();
}

std::string boxplot_csv(const ExperimentConfig& config,
                        const SweepResult& result) {
  std::ostringstream out;
  out << header_lines(config, result.config_hash);
  out << "n_qubits,protocol,T_us,count,min,q1,median,q3,max\n";
  for (const auto& b : result.boxes) {
    out << b.n_qubits << ',' << to_string(b.protocol) << ','
        << format_number(b.total_time) << ',' << b.ratio.count << ','
        << format_number(b.ratio.min) << ',' << format_number(b.ratio.q1)
        << ',' << format_number(b.ratio.median) << ','
        << format_number(b.ratio.q3) << ',' << format_number(b.ratio.max)
        << '\n';
  }
  return out.str();
}

std::string cell_file_name(const ExperimentConfig& config,
                           const CellResult& cell) {
  std::string id = config.instances[cell.instance].id;
  for (char& c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return "cell_" + id + "_" + to_string(cell.protocol) + "_T" +
         format_number(cell.total_time) + ".json";
}

nlohmann::json cell_to_json(const ExperimentConfig& config,
                            const SweepResult& result, const CellResult& cell) {
  const Instance& inst = config.instances[cell.instance];
  nlohmann::json j;
  if (cell.ok && cell.run) {
    j = run_result_to_json(*cell.run, inst.graph.n_vertices());
    j["stats"] = stats_to_json(cell.stats);
    std::vector<WeightedEnergy> energies;
    for (const auto& s : cell.run->samples) {
      energies.push_back({s.energy, static_cast<double>(s.count)});
    }
    j["kde"] = kde_to_json(kde(energies));
  } else {
    j["protocol"] = to_string(cell.protocol);
    j["T_us"] = cell.total_time;
    j["seed"] = cell.seed;
    j["cost"] = {{"A", config.cost.a}, {"B", config.cost.b}};
    j["c6"] = config.c6;
    j["unit_convention"] = defaults::kUnitConvention;
  }
  j["status"] = cell.ok ? "ok" : "failed";
  if (!cell.ok) j["error"] = cell.error;
  j["instance"] = inst.id;
  j["n_qubits"] = inst.graph.n_vertices();
  j["config_hash"] = result.config_hash;
  return j;
}

}  // namespace acqc
