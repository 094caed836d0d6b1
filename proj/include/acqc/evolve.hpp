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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acqc/graph.hpp"
#include "acqc/hamiltonian.hpp"
#include "acqc/schedule.hpp"
#include "acqc/state.hpp"

namespace acqc {

struct EvolutionConfig {
  /// Unset means T / 2000.
  std::optional<double> dt_max;
  double norm_tolerance = 1e-6;
  /// Order of the time stepper; only 4 is implemented.
  int order = 4;
  bool renormalize = false;
  /// Per-exponential error target of the Lanczos propagator.
  double krylov_tolerance = 1e-13;
  int krylov_max_dim = 30;
};

struct EvolutionStats {
  int steps = 0;
  long matvecs = 0;
  double max_norm_drift = 0.0;
};

/// Called after each step with (t, state).
using StepObserver = std::function<void(double, const StateVector&)>;

/// Fourth-order commutator-free Magnus stepper: two exponentials per step
/// built from H at the Gauss-Legendre nodes, each applied with a Lanczos
/// propagator. Starts from |0...0>.
StateVector evolve(const RydbergHamiltonian& h, const EvolutionConfig& config,
                   EvolutionStats* stats = nullptr,
                   const StepObserver& observer = {});
StateVector evolve_from(const RydbergHamiltonian& h, StateVector psi,
                        const EvolutionConfig& config,
                        EvolutionStats* stats = nullptr,
                        const StepObserver& observer = {});

/// psi <- exp(-i tau H(terms)) psi.
void propagate_krylov(const RydbergHamiltonian& h,
                      const HamiltonianTerms& terms, double tau,
                      StateVector& psi, double tolerance, int max_dim,
                      long* matvecs = nullptr);

double ground_state_fidelity(const StateVector& psi, const MisSolution& mis);

struct SampleCount {
  std::uint64_t bitstring = 0;
  int count = 0;
};

/// Multinomial draw from |a_x|^2, sorted by bitstring.
std::vector<SampleCount> sample_bitstrings(const StateVector& psi, int shots,
                                           std::uint64_t seed);

enum class Protocol { Linear, Smooth, Acqc, AcqcZrot };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& name);

struct RunRequest {
  Protocol protocol = Protocol::Smooth;
  double total_time = 1.0;
  HardwareLimits limits;
  CostParams cost;
  double c6 = defaults::kC6;
  int shots = defaults::kShots;
  std::uint64_t seed = 0;
  EvolutionConfig evolution;
  LimitPolicy limit_policy = LimitPolicy::Reject;
  LinearOptions linear;
  /// Couplings beyond this distance are dropped when set.
  std::optional<double> interaction_cutoff;
  bool keep_final_state = true;
};

struct RunSample {
  std::uint64_t bitstring = 0;
  int count = 0;
  double energy = 0.0;
};

struct RunResult {
  std::optional<StateVector> final_state;
  std::vector<RunSample> samples;
  int shots = 0;
  double ground_population = 0.0;
  Protocol protocol = Protocol::Smooth;
  double total_time = 0.0;
  std::uint64_t seed = 0;
  CostParams cost;
  double c6 = defaults::kC6;
  HardwareLimits limits;
  LimitReport limit_report;
  EvolutionStats evolution;
  MisSolution mis;
};

/// Builds the protocol's schedule (ACQC variants use the smooth schedule as
/// base), evolves, samples, and scores every bitstring with the cost function.
DriveSchedule protocol_schedule(Protocol protocol, const HardwareLimits& limits,
                                double total_time, LimitPolicy policy,
                                const LinearOptions& linear = {});
RunResult run_protocol(const UnitDiskGraph& graph, const RunRequest& request);
RunResult run_protocol(const UnitDiskGraph& graph, const MisSolution& mis,
                       const RunRequest& request);

/// Bitstring characters ordered by qubit index, qubit 0 first.
std::string bitstring_to_string(std::uint64_t mask, int n);
std::uint64_t bitstring_from_string(const std::string& s);

nlohmann::json run_result_to_json(const RunResult& r, int n_qubits);

}  // namespace acqc
