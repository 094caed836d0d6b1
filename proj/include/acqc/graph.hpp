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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "acqc/defaults.hpp"

namespace acqc {

class InteractionMatrix;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Per-vertex 0/1 assignment. Qubit i is bit i of the packed mask form.
using Bitstring = std::vector<std::uint8_t>;

std::uint64_t to_mask(std::span<const std::uint8_t> bits);
Bitstring from_mask(std::uint64_t mask, int n);

/// Atom positions plus the edge set they induce under a blockade radius.
/// Edges are always derived from the positions, never supplied.
class UnitDiskGraph {
 public:
  UnitDiskGraph(std::vector<Point> positions, double blockade_radius);

  const std::vector<Point>& positions() const { return positions_; }
  double blockade_radius() const { return blockade_radius_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int n_vertices() const { return static_cast<int>(positions_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  /// Neighbour bitmask of vertex v (only valid for n_vertices <= 64).
  std::uint64_t neighbours(int v) const { return adjacency_[v]; }
  int degree(int v) const;

  double distance(int u, int v) const;

 private:
  std::vector<Point> positions_;
  double blockade_radius_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adjacency_;
};

struct GridSpec {
  int rows = 0;
  int cols = 0;
  double spacing = defaults::kGridSpacing;
  int n_nodes = 0;
  std::uint64_t seed = 0;
  /// Unset means blockade_radius_default(C6, omega_max).
  std::optional<double> blockade_radius;
};

/// R_b = (C6 / omega_max)^(1/6); about 8.44 um for the defaults, which sits
/// between the grid diagonal (7.78 um) and twice the spacing (11 um).
double blockade_radius_default(double c6 = defaults::kC6,
                               double omega_max = defaults::kOmegaMax);

struct CostParams {
  double a = defaults::kCostA;
  double b = defaults::kCostB;

  void validate() const;
};

struct MisSolution {
  int size = 0;
  std::vector<std::uint64_t> witnesses;  // sorted ascending
  double energy = 0.0;
  bool witnesses_truncated = false;
};

struct MisOptions {
  int max_vertices = defaults::kMisVertexCap;
  int witness_limit = defaults::kMisWitnessLimit;
};

struct GapReport {
  double lhs = 0.0;  // (N_vertices - N_edges) * delta2
  double rhs = 0.0;  // sum of J over graph edges
  bool condition = false;
  bool vertices_exceed_edges = false;
};

/// Picks exactly spec.n_nodes distinct crossings of a rows x cols lattice.
UnitDiskGraph generate_kings_graph(const GridSpec& spec);

double cost_energy(const UnitDiskGraph& graph,
                   std::span<const std::uint8_t> bits,
                   const CostParams& params);
double cost_energy(const UnitDiskGraph& graph, std::uint64_t mask,
                   const CostParams& params);

bool is_independent(const UnitDiskGraph& graph,
                    std::span<const std::uint8_t> bits);
bool is_independent(const UnitDiskGraph& graph, std::uint64_t mask);

/// Branch and bound: greedy initial bound, clique-cover pruning, branching
/// on the highest-degree remaining vertex with the include branch first.
/// Collects every maximum independent set up to options.witness_limit.
MisSolution solve_mis_exact(const UnitDiskGraph& graph,
                            const CostParams& params = {},
                            const MisOptions& options = {});

GapReport check_gap_condition(const UnitDiskGraph& graph, double delta2,
                              const InteractionMatrix& interactions);

/// Graph file: {"positions", "blockade_radius", "seed", "grid"}.
struct GraphFile {
  UnitDiskGraph graph;
  std::optional<std::uint64_t> seed;
  std::optional<GridSpec> grid;
};

nlohmann::json to_json(const GraphFile& file);
GraphFile graph_from_json(const nlohmann::json& j);
void write_graph_file(const std::string& path, const GraphFile& file);
GraphFile read_graph_file(const std::string& path);

}  // namespace acqc
