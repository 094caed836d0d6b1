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

#include "acqc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "acqc/error.hpp"
#include "acqc/hamiltonian.hpp"
#include "acqc/rng.hpp"

namespace acqc {

std::uint64_t to_mask(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) {
    throw Error(ErrorKind::Size, "bitstring longer than 64 qubits");
  }
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw Error(ErrorKind::Parameter, "bitstring entries must be 0 or 1");
    }
    if (bits[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Bitstring from_mask(std::uint64_t mask, int n) {
  Bitstring bits(n);
  for (int i = 0; i < n; ++i) bits[i] = (mask >> i) & 1U;
  return bits;
}

UnitDiskGraph::UnitDiskGraph(std::vector<Point> positions,
                             double blockade_radius)
    : positions_(std::move(positions)), blockade_radius_(blockade_radius) {
  if (!(blockade_radius_ > 0.0) || !std::isfinite(blockade_radius_)) {
    throw Error(ErrorKind::Parameter, "blockade radius must be positive");
  }
  const int n = n_vertices();
  if (n > 64) {
    throw Error(ErrorKind::Size, "at most 64 vertices are supported");
  }
  for (const auto& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::Geometry, "non-finite atom position");
    }
  }
  adjacency_.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (positions_[u].x == positions_[v].x &&
          positions_[u].y == positions_[v].y) {
        throw Error(ErrorKind::Geometry,
                    "duplicate position for vertices " + std::to_string(u) +
                        " and " + std::to_string(v));
      }
      if (distance(u, v) <= blockade_radius_) {
        edges_.emplace_back(u, v);
        adjacency_[u] |= std::uint64_t{1} << v;
        adjacency_[v] |= std::uint64_t{1} << u;
      }
    }
  }
}

int UnitDiskGraph::degree(int v) const {
  return std::popcount(adjacency_[v]);
}

double UnitDiskGraph::distance(int u, int v) const {
  return std::hypot(positions_[u].x - positions_[v].x,
                    positions_[u].y - positions_[v].y);
}

double blockade_radius_default(double c6, double omega_max) {
  if (!(c6 > 0.0) || !(omega_max > 0.0)) {
    throw Error(ErrorKind::Parameter, "c6 and omega_max must be positive");
  }
  return std::pow(c6 / omega_max, 1.0 / 6.0);
}

void CostParams::validate() const {
  if (!(b > 0.0) || !(a > b)) {
    throw Error(ErrorKind::Parameter, "cost constants need A > B > 0");
  }
}

UnitDiskGraph generate_kings_graph(const GridSpec& spec) {
  if (spec.rows <= 0 || spec.cols <= 0 || !(spec.spacing > 0.0) ||
      spec.n_nodes < 0) {
    throw Error(ErrorKind::Parameter, "invalid grid specification");
  }
  const int sites = spec.rows * spec.cols;
  if (spec.n_nodes > sites) {
    throw Error(ErrorKind::InstanceInfeasible,
                std::to_string(spec.n_nodes) + " nodes do not fit on a " +
                    std::to_string(spec.rows) + "x" +
                    std::to_string(spec.cols) + " grid");
  }
  // Partial Fisher-Yates: the first n_nodes entries are a uniform sample.
  std::vector<int> crossings(sites);
  std::iota(crossings.begin(), crossings.end(), 0);
  Rng rng(spec.seed);
  for (int k = 0; k < spec.n_nodes; ++k) {
    const auto pick = k + static_cast<int>(rng.below(sites - k));
    std::swap(crossings[k], crossings[pick]);
  }
  crossings.resize(spec.n_nodes);
  std::sort(crossings.begin(), crossings.end());

  std::vector<Point> positions;
  positions.reserve(crossings.size());
  for (int c : crossings) {
    positions.push_back({(c % spec.cols) * spec.spacing,
                         (c / spec.cols) * spec.spacing});
  }
  return UnitDiskGraph(std::move(positions),
                       spec.blockade_radius.value_or(blockade_radius_default()));
}

double cost_energy(const UnitDiskGraph& graph, std::uint64_t mask,
                   const CostParams& params) {
  int violations = 0;
  for (const auto& [u, v] : graph.edges()) {
    if (((mask >> u) & 1U) && ((mask >> v) & 1U)) ++violations;
  }
  return params.a * violations - params.b * std::popcount(mask);
}

double cost_energy(const UnitDiskGraph& graph,
                   std::span<const std::uint8_t> bits,
                   const CostParams& params) {
  if (static_cast<int>(bits.size()) != graph.n_vertices()) {
    throw Error(ErrorKind::Dimension, "bitstring length " +
                                          std::to_string(bits.size()) +
                                          " != n_vertices " +
                                          std::to_string(graph.n_vertices()));
  }
  return cost_energy(graph, to_mask(bits), params);
}

bool is_independent(const UnitDiskGraph& graph, std::uint64_t mask) {
  for (int v = 0; v < graph.n_vertices(); ++v) {
    if (((mask >> v) & 1U) && (graph.neighbours(v) & mask)) return false;
  }
  return true;
}

bool is_independent(const UnitDiskGraph& graph,
                    std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != graph.n_vertices()) {
    throw Error(ErrorKind::Dimension, "bitstring length mismatch");
  }
  return is_independent(graph, to_mask(bits));
}

namespace {

class MisSearch {
 public:
  MisSearch(const UnitDiskGraph& graph, int witness_limit)
      : adjacency_(graph.n_vertices()), witness_limit_(witness_limit) {
    for (int v = 0; v < graph.n_vertices(); ++v) {
      adjacency_[v] = graph.neighbours(v);
    }
  }

  void seed_lower_bound(int size) { best_ = size; }

  void run(std::uint64_t candidates) { branch(candidates, 0, 0); }

  int best() const { return best_; }
  std::vector<std::uint64_t>& witnesses() { return witnesses_; }
  bool truncated() const { return truncated_; }

 private:
  // Greedy clique cover of the candidate set; an independent set takes at
  // most one vertex per clique.
  int clique_cover_bound(std::uint64_t candidates) const {
    std::uint64_t cliques[64];
    int n_cliques = 0;
    while (candidates) {
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      int k = 0;
      while (k < n_cliques && (cliques[k] & ~adjacency_[v]) != 0) ++k;
      if (k == n_cliques) cliques[n_cliques++] = 0;
      cliques[k] |= std::uint64_t{1} << v;
    }
    return n_cliques;
  }

  void record(std::uint64_t set, int size) {
    if (size > best_) {
      best_ = size;
      witnesses_.clear();
      truncated_ = false;
    }
    if (size == best_) {
      if (static_cast<int>(witnesses_.size()) < witness_limit_) {
        witnesses_.push_back(set);
      } else {
        truncated_ = true;
      }
    }
  }

  void branch(std::uint64_t candidates, std::uint64_t set, int size) {
    // Vertices without candidate neighbours belong to every maximum
    // extension.
    for (std::uint64_t rest = candidates; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      if ((adjacency_[v] & candidates) == 0) {
        set |= std::uint64_t{1} << v;
        candidates &= ~(std::uint64_t{1} << v);
        ++size;
      }
    }
    if (candidates == 0) {
      record(set, size);
      return;
    }
    if (size + clique_cover_bound(candidates) < best_) return;

    int pivot = -1;
    int pivot_degree = -1;
    for (std::uint64_t rest = candidates; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const int d = std::popcount(adjacency_[v] & candidates);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pivot;
    branch(candidates & ~bit & ~adjacency_[pivot], set | bit, size + 1);
    branch(candidates & ~bit, set, size);
  }

  std::vector<std::uint64_t> adjacency_;
  int witness_limit_;
  int best_ = 0;
  std::vector<std::uint64_t> witnesses_;
  bool truncated_ = false;
};

int greedy_independent_set(const UnitDiskGraph& graph) {
  std::uint64_t candidates = graph.n_vertices() == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << graph.n_vertices()) - 1;
  int size = 0;
  while (candidates) {
    int pick = -1;
    int pick_degree = 65;
    for (std::uint64_t rest = candidates; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const int d = std::popcount(graph.neighbours(v) & candidates);
      if (d < pick_degree) {
        pick = v;
        pick_degree = d;
      }
    }
    candidates &= ~(graph.neighbours(pick) | (std::uint64_t{1} << pick));
    ++size;
  }
  return size;
}

}  // namespace

MisSolution solve_mis_exact(const UnitDiskGraph& graph,
                            const CostParams& params,
                            const MisOptions& options) {
  const int n = graph.n_vertices();
  if (n > options.max_vertices || n > 64) {
    throw Error(ErrorKind::Size, std::to_string(n) +
                                     " vertices exceed the exact-solver cap " +
                                     std::to_string(options.max_vertices));
  }
  if (options.witness_limit < 1) {
    throw Error(ErrorKind::Parameter, "witness limit must be at least 1");
  }
  MisSolution solution;
  if (n == 0) {
    solution.witnesses = {0};
    return solution;
  }
  MisSearch search(graph, options.witness_limit);
  search.seed_lower_bound(greedy_independent_set(graph));
  search.run(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);

  solution.size = search.best();
  solution.witnesses = std::move(search.witnesses());
  std::sort(solution.witnesses.begin(), solution.witnesses.end());
  solution.witnesses_truncated = search.truncated();
  solution.energy = -params.b * solution.size;
  return solution;
}

GapReport check_gap_condition(const UnitDiskGraph& graph, double delta2,
                              const InteractionMatrix& interactions) {
  if (interactions.size() != graph.n_vertices()) {
    throw Error(ErrorKind::Dimension,
                "interaction matrix does not match the graph");
  }
  GapReport report;
  report.lhs = (graph.n_vertices() - graph.n_edges()) * delta2;
  for (const auto& [u, v] : graph.edges()) report.rhs += interactions(u, v);
  report.condition = report.lhs < report.rhs;
  report.vertices_exceed_edges = graph.n_vertices() > graph.n_edges();
  return report;
}

nlohmann::json to_json(const GraphFile& file) {
  nlohmann::json j;
  j["positions"] = nlohmann::json::array();
  for (const auto& p : file.graph.positions()) {
    j["positions"].push_back({p.x, p.y});
  }
  j["blockade_radius"] = file.graph.blockade_radius();
  if (file.seed) j["seed"] = *file.seed;
  if (file.grid) {
    j["grid"] = {{"rows", file.grid->rows},
                 {"cols", file.grid->cols},
                 {"spacing", file.grid->spacing}};
  }
  return j;
}

GraphFile graph_from_json(const nlohmann::json& j) {
  try {
    std::vector<Point> positions;
    for (const auto& p : j.at("positions")) {
      if (!p.is_array() || p.size() != 2) {
        throw Error(ErrorKind::Format, "positions must be [x, y] pairs");
      }
      positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    GraphFile file{UnitDiskGraph(std::move(positions),
                                 j.at("blockade_radius").get<double>()),
                   std::nullopt, std::nullopt};
    if (j.contains("seed")) file.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grid")) {
      GridSpec grid;
      grid.rows = j["grid"].at("rows").get<int>();
      grid.cols = j["grid"].at("cols").get<int>();
      grid.spacing = j["grid"].at("spacing").get<double>();
      grid.n_nodes = file.graph.n_vertices();
      grid.seed = file.seed.value_or(0);
      file.grid = grid;
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("graph file: ") + e.what());
  }
}

void write_graph_file(const std::string& path, const GraphFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Format, "cannot write " + path);
  out << to_json(file).dump(2) << '\n';
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Format, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, path + ": " + e.what());
  }
  return graph_from_json(j);
}

}  // namespace acqc
