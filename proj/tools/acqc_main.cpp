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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acqc/error.hpp"
#include "acqc/evolve.hpp"
#include "acqc/experiment.hpp"
#include "acqc/graph.hpp"
#include "acqc/schedule.hpp"
#include "acqc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Globals {
  std::uint64_t seed = 0;
  double omega_max = acqc::defaults::kOmegaMax;
  double delta_max = acqc::defaults::kDeltaMax;
  double c6 = acqc::defaults::kC6;
  double cost_a = acqc::defaults::kCostA;
  double cost_b = acqc::defaults::kCostB;
  int shots = acqc::defaults::kShots;
  std::string out;
  int jobs = 1;
  bool clamp_limits = false;
  bool strict_limits = false;
  std::string units = "rad";
  bool no_phase = false;

  acqc::HardwareLimits limits() const {
    acqc::HardwareLimits l = acqc::limits_in_internal_units(
        omega_max, delta_max,
        units == "mhz" ? acqc::FrequencyUnit::Megahertz
                       : acqc::FrequencyUnit::RadPerMicrosecond);
    l.phase_controllable = !no_phase;
    return l;
  }
  acqc::CostParams cost() const {
    acqc::CostParams c{cost_a, cost_b};
    c.validate();
    return c;
  }
  acqc::LimitPolicy policy() const {
    if (clamp_limits) return acqc::LimitPolicy::Clamp;
    if (strict_limits) return acqc::LimitPolicy::Reject;
    return acqc::LimitPolicy::Report;
  }
};

struct GridOptions {
  int rows = 4;
  int cols = 4;
  double spacing = acqc::defaults::kGridSpacing;
  int min_nodes = 12;
  int max_nodes = 12;
  std::optional<double> radius;
  int count = 1;
};

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--rows", g.rows, "lattice rows")->capture_default_str();
  cmd->add_option("--cols", g.cols, "lattice columns")->capture_default_str();
  cmd->add_option("--spacing", g.spacing, "lattice spacing (um)")
      ->capture_default_str();
  cmd->add_option("--min-nodes", g.min_nodes, "smallest node count")
      ->capture_default_str();
  cmd->add_option("--max-nodes", g.max_nodes, "largest node count")
      ->capture_default_str();
  cmd->add_option("--radius", g.radius,
                  "blockade radius (um); default (C6/omega_max)^(1/6)");
  cmd->add_option("--count", g.count, "number of instances")
      ->capture_default_str();
}

// Instance k uses seed + k and cycles through the node-count range.
std::vector<acqc::GraphFile> generate_graphs(const GridOptions& g,
                                             const Globals& globals) {
  if (g.count < 1) throw acqc::Error(acqc::ErrorKind::Parameter, "count must be >= 1");
  if (g.min_nodes < 1 || g.max_nodes < g.min_nodes) {
    throw acqc::Error(acqc::ErrorKind::Parameter,
                      "need 1 <= min-nodes <= max-nodes");
  }
  const double radius =
      g.radius.value_or(acqc::blockade_radius_default(
          globals.c6, globals.limits().omega_max));
  std::vector<acqc::GraphFile> files;
  for (int k = 0; k < g.count; ++k) {
    acqc::GridSpec spec;
    spec.rows = g.rows;
    spec.cols = g.cols;
    spec.spacing = g.spacing;
    spec.n_nodes = g.min_nodes + k % (g.max_nodes - g.min_nodes + 1);
    spec.seed = globals.seed + static_cast<std::uint64_t>(k);
    spec.blockade_radius = radius;
    files.push_back({acqc::generate_kings_graph(spec), spec.seed, spec});
  }
  return files;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw acqc::Error(acqc::ErrorKind::Format, "cannot write " + path);
  out << text;
}

std::string graph_file_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "graph_%03d.json", k);
  return buf;
}

void report_limits(const acqc::LimitReport& r, const acqc::HardwareLimits& l) {
  if (r.omega_exceeded) {
    std::cerr << "warning: Omega reaches " << r.max_omega << " rad/us at t = "
              << r.t_max_omega << " us (limit " << l.omega_max << ")"
              << (r.clamped ? ", clamped" : "") << "\n";
  }
  if (r.delta_exceeded) {
    std::cerr << "warning: |Delta| reaches " << r.max_abs_delta
              << " rad/us at t = " << r.t_max_abs_delta << " us (limit "
              << l.delta_max << ")" << (r.clamped ? ", clamped" : "") << "\n";
  }
}

int cmd_generate(const Globals& globals, const GridOptions& grid) {
  const auto files = generate_graphs(grid, globals);
  const std::filesystem::path dir(globals.out.empty() ? "." : globals.out);
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto path = dir / graph_file_name(static_cast<int>(k));
    auto j = acqc::to_json(files[k]);
    j["meta"] = acqc::metadata_to_json(
        {acqc::hash_json({{"graph", j}, {"c6", globals.c6}}), globals.cost(),
         globals.c6});
    write_text(path.string(), j.dump(2) + "\n");
    const auto mis = acqc::solve_mis_exact(files[k].graph, globals.cost());
    std::cout << path.string() << " nodes=" << files[k].graph.n_vertices()
              << " edges=" << files[k].graph.n_edges()
              << " mis_size=" << mis.size << "\n";
  }
  return kExitOk;
}

int cmd_run(const Globals& globals, const GridOptions& grid,
            const std::vector<std::string>& graph_paths,
            const std::string& protocols, const std::string& times,
            std::optional<double> dt_max, double ramp_fraction) {
  acqc::ExperimentConfig config;
  if (graph_paths.empty()) {
    const auto files = generate_graphs(grid, globals);
    for (std::size_t k = 0; k < files.size(); ++k) {
      config.instances.push_back(
          {"g" + std::to_string(k), files[k].graph, files[k].seed});
    }
  } else {
    for (const auto& p : graph_paths) {
      auto file = acqc::read_graph_file(p);
      config.instances.push_back(
          {std::filesystem::path(p).stem().string(), file.graph, file.seed});
    }
  }
  for (const auto& p : split_list(protocols)) {
    config.protocols.push_back(acqc::protocol_from_string(p));
  }
  for (const auto& t : split_list(times)) {
    try {
      config.times.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw acqc::Error(acqc::ErrorKind::Parameter, "bad time '" + t + "'");
    }
  }
  config.shots = globals.shots;
  config.seed = globals.seed;
  config.limits = globals.limits();
  config.cost = globals.cost();
  config.c6 = globals.c6;
  config.limit_policy = globals.policy();
  config.linear.ramp_fraction = ramp_fraction;
  config.evolution.dt_max = dt_max;
  config.jobs = globals.jobs;
  config.out_dir = globals.out.empty() ? "results" : globals.out;

  const auto result = acqc::run_sweep(config);
  std::cout << acqc::aggregate_csv(config, result);
  for (const auto& cell : result.cells) {
    if (!cell.ok) {
      std::cerr << "cell " << config.instances[cell.instance].id << " "
                << acqc::to_string(cell.protocol) << " T=" << cell.total_time
                << " failed: " << cell.error << "\n";
    }
  }
  std::cerr << "wrote " << result.cells.size() << " cells to "
            << *config.out_dir << "\n";
  return result.all_ok() ? kExitOk : kExitFailure;
}

int cmd_schedule(const Globals& globals, const std::string& protocol,
                 double total_time, int n_samples, const std::string& format,
                 double ramp_fraction) {
  if (n_samples < 2) {
    throw acqc::Error(acqc::ErrorKind::Parameter, "need at least 2 samples");
  }
  acqc::LinearOptions linear;
  linear.ramp_fraction = ramp_fraction;
  const auto limits = globals.limits();
  const auto schedule =
      acqc::protocol_schedule(acqc::protocol_from_string(protocol), limits,
                              total_time, globals.policy(), linear);
  report_limits(schedule.limit_report(), limits);
  const nlohmann::json settings = {
      {"protocol", protocol},
      {"T_us", total_time},
      {"samples", n_samples},
      {"limits", acqc::limits_to_json(limits)},
      {"policy", static_cast<int>(globals.policy())},
      {"ramp_fraction", ramp_fraction}};
  const acqc::OutputMetadata meta{acqc::hash_json(settings), globals.cost(),
                                  globals.c6};
  std::string text;
  if (format == "csv") {
    text = acqc::metadata_comment(meta) +
           acqc::schedule_to_csv(schedule, n_samples);
  } else {
    auto j = acqc::schedule_to_json(schedule, n_samples);
    j["meta"] = acqc::metadata_to_json(meta);
    text = j.dump(2) + "\n";
  }
  if (globals.out.empty()) {
    std::cout << text;
  } else {
    write_text(globals.out, text);
  }
  return kExitOk;
}

int cmd_verify(const Globals& globals, double corrupt_fy) {
  acqc::VerifyOptions options;
  options.seed = globals.seed == 0 ? options.seed : globals.seed;
  options.corrupt_fy = corrupt_fy;
  bool all = true;
  for (const auto& check : acqc::run_verification(options)) {
    std::cout << (check.pass ? "PASS  " : "FAIL  ") << check.name << ": "
              << check.detail << "\n";
    all = all && check.pass;
  }
  return all ? kExitOk : kExitFailure;
}

bool is_config_error(acqc::ErrorKind kind) {
  switch (kind) {
    case acqc::ErrorKind::Parameter:
    case acqc::ErrorKind::Dimension:
    case acqc::ErrorKind::InstanceInfeasible:
    case acqc::ErrorKind::Size:
    case acqc::ErrorKind::Geometry:
    case acqc::ErrorKind::LimitViolation:
    case acqc::ErrorKind::Format:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterdiabatic Rydberg-array MIS simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "instance and sampling seed")
      ->capture_default_str();
  app.add_option("--omega-max", g.omega_max, "Rabi frequency limit")
      ->capture_default_str();
  app.add_option("--delta-max", g.delta_max, "detuning limit")
      ->capture_default_str();
  app.add_option("--units", g.units,
                 "unit of --omega-max/--delta-max: rad (rad/us) or mhz "
                 "(multiplied by 2 pi)")
      ->check(CLI::IsMember({"rad", "mhz"}))
      ->capture_default_str();
  app.add_option("--c6", g.c6, "van der Waals coefficient (rad/us um^6)")
      ->capture_default_str();
  app.add_option("--cost-a", g.cost_a, "edge penalty A")->capture_default_str();
  app.add_option("--cost-b", g.cost_b, "vertex reward B")->capture_default_str();
  app.add_option("--shots", g.shots, "samples per run")->capture_default_str();
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--jobs", g.jobs, "parallel sweep workers")
      ->capture_default_str();
  auto* clamp = app.add_flag("--clamp-limits", g.clamp_limits,
                             "clip synthesized controls to the limits");
  app.add_flag("--strict-limits", g.strict_limits,
               "fail when synthesized controls exceed the limits")
      ->excludes(clamp);
  app.add_flag("--no-phase-control", g.no_phase,
               "hardware without phase control (acqc is then rejected)");

  GridOptions grid;
  auto* gen = app.add_subcommand("generate", "write random King's graphs");
  add_grid_options(gen, grid);

  std::vector<std::string> graph_paths;
  std::string protocols = "linear,smooth,acqc";
  std::string times = "0.1,1,4";
  std::optional<double> dt_max;
  double ramp_fraction = 0.1;
  auto* run = app.add_subcommand("run", "simulate a protocol sweep");
  add_grid_options(run, grid);
  run->add_option("--graph", graph_paths, "graph files (else generated)");
  run->add_option("--protocols", protocols,
                  "comma list of linear, smooth, acqc, acqc-zrot")
      ->capture_default_str();
  run->add_option("--times", times, "comma list of evolution times (us)")
      ->capture_default_str();
  run->add_option("--dt-max", dt_max, "largest time step (us); default T/2000");
  run->add_option("--ramp-fraction", ramp_fraction,
                  "linear protocol ramp fraction")
      ->capture_default_str();

  std::string protocol = "acqc";
  double total_time = 1.0;
  int n_samples = 1001;
  std::string format = "json";
  auto* sched = app.add_subcommand("schedule", "export sampled waveforms");
  sched->add_option("--protocol", protocol, "linear, smooth, acqc, acqc-zrot")
      ->capture_default_str();
  sched->add_option("-T,--time", total_time, "evolution time (us)")
      ->capture_default_str();
  sched->add_option("-n,--samples", n_samples, "grid points")
      ->capture_default_str();
  sched->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sched->add_option("--ramp-fraction", ramp_fraction,
                    "linear protocol ramp fraction")
      ->capture_default_str();

  double corrupt_fy = 1.0;
  auto* verify = app.add_subcommand("verify", "run the verification battery");
  verify->add_option("--corrupt-fy", corrupt_fy,
                     "scale f_y in the gauge check (negative control)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(g, grid);
    if (*run) {
      return cmd_run(g, grid, graph_paths, protocols, times, dt_max,
                     ramp_fraction);
    }
    if (*sched) {
      return cmd_schedule(g, protocol, total_time, n_samples, format,
                          ramp_fraction);
    }
    if (*verify) return cmd_verify(g, corrupt_fy);
  } catch (const acqc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_config_error(e.kind()) ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}
