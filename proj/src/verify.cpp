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

#include "acqc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acqc/error.hpp"
#include "acqc/evolve.hpp"
#include "acqc/hamiltonian.hpp"
#include "acqc/rng.hpp"

namespace acqc {

namespace {

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

UnitDiskGraph random_graph(Rng& rng, int min_nodes, int max_nodes) {
  GridSpec spec;
  spec.n_nodes =
      min_nodes + static_cast<int>(rng.below(max_nodes - min_nodes + 1));
  spec.rows = 4;
  spec.cols = std::max(4, (spec.n_nodes + 3) / 4 + 1);
  spec.seed = rng.next();
  return generate_kings_graph(spec);
}

// Worst (or, with `least`, best) scaled residual over the sampled times.
double gauge_residual_extreme(const VerifyOptions& options, double fy_scale,
                              bool least) {
  Rng rng(options.seed);
  const HardwareLimits limits;
  double worst = least ? 1e300 : 0.0;
  for (int phased = 0; phased < 2; ++phased) {
    for (int n = 1; n <= 3; ++n) {
      const double total = 0.5 + rng.uniform();
      const DriveSchedule base = phased ? phased_smooth_schedule(limits, total)
                                        : smooth_schedule(limits, total);
      for (int k = 0; k < options.gauge_times; ++k) {
        const double t = total * (0.02 + 0.96 * rng.uniform());
        CdTerms f = cd_terms(base.jet(t));
        f.f_y *= fy_scale;
        const double r = gauge_residual(base, t, n, f).scaled;
        worst = least ? std::min(worst, r) : std::max(worst, r);
      }
    }
  }
  return worst;
}

}  // namespace

DriveSchedule phased_smooth_schedule(const HardwareLimits& limits,
                                     double total_time) {
  const DriveSchedule s = smooth_schedule(limits, total_time);
  return DriveSchedule(
      s.omega(), s.delta(),
      Waveform::sinusoid(0.3, 1.1 / total_time, 0.4,
                         2.0 * std::numbers::pi / total_time, 0.2, total_time),
      total_time, limits, "smooth-phased");
}

CheckResult check_gauge_residual(const VerifyOptions& options) {
  const double worst = gauge_residual_extreme(options, options.corrupt_fy, false);
  return {"gauge residual (N = 1..3, zero and phased base)", worst < 1e-8,
          "max scaled residual " + sci(worst) + " < 1e-8"};
}

CheckResult check_gauge_negative_control(const VerifyOptions& options) {
  const double least = gauge_residual_extreme(options, 2.0, true);
  return {"gauge residual negative control (f_y x 2)", least > 1e-3,
          "min scaled residual " + sci(least) + " > 1e-3"};
}

CheckResult check_dense_equivalence(const VerifyOptions& options) {
  Rng rng(options.seed + 1);
  const int n = options.dense_qubits;
  const UnitDiskGraph graph = random_graph(rng, n, n);
  const InteractionMatrix j = build_interactions(graph);
  double worst = 0.0;
  for (int d = 0; d < options.dense_draws; ++d) {
    const Protocol protocols[] = {Protocol::Linear, Protocol::Smooth,
                                  Protocol::Acqc, Protocol::AcqcZrot};
    const Protocol p = protocols[d % 4];
    const double total = 0.1 + 3.9 * rng.uniform();
    const RydbergHamiltonian h(
        j, protocol_schedule(p, HardwareLimits{}, total, LimitPolicy::Report));
    const double t = total * rng.uniform();
    std::vector<cplx> amps(h.dimension());
    for (auto& a : amps) a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    const StateVector psi(n, amps);
    const StateVector fast = apply_hamiltonian(h, t, psi);
    const Eigen::MatrixXcd dense = build_dense(h, t);
    const Eigen::Map<const Eigen::VectorXcd> v(amps.data(), amps.size());
    const Eigen::VectorXcd ref = dense * v;
    const Eigen::Map<const Eigen::VectorXcd> got(fast.amplitudes().data(),
                                                 fast.dimension());
    worst = std::max(worst, (got - ref).norm() / ref.norm());
  }
  return {"matrix-free vs dense (N = " + std::to_string(n) + ")",
          worst < 1e-12, "max relative difference " + sci(worst) + " < 1e-12"};
}

CheckResult check_single_qubit_cd(const VerifyOptions&) {
  const UnitDiskGraph single({Point{0.0, 0.0}}, 1.0);
  const MisSolution mis = solve_mis_exact(single);
  auto fidelity = [&](Protocol p, double total) {
    RunRequest req;
    req.protocol = p;
    req.total_time = total;
    req.shots = 1;
    req.limit_policy = LimitPolicy::Report;
    return run_protocol(single, mis, req).ground_population;
  };
  double worst = 1.0;
  for (double total : {0.05, 0.1, 0.5, 1.0}) {
    worst = std::min(worst, fidelity(Protocol::Acqc, total));
  }
  const double smooth = fidelity(Protocol::Smooth, 0.05);
  const double acqc_short = fidelity(Protocol::Acqc, 0.05);
  const bool pass = worst >= 0.999 && acqc_short - smooth >= 0.05;
  return {"single-qubit CD exactness", pass,
          "min ACQC fidelity " + std::to_string(worst) +
              " >= 0.999; smooth at T = 0.05 " + std::to_string(smooth)};
}

CheckResult check_zrot_equivalence(const VerifyOptions& options) {
  Rng rng(options.seed + 2);
  double worst = 0.0;
  for (int g = 0; g < options.zrot_graphs; ++g) {
    const UnitDiskGraph graph = random_graph(rng, 2, 4);
    const MisSolution mis = solve_mis_exact(graph);
    const double total = 0.1 + 0.9 * rng.uniform();
    RunRequest req;
    req.total_time = total;
    req.shots = 1;
    req.limit_policy = LimitPolicy::Report;
    req.protocol = Protocol::Acqc;
    const auto phased = run_protocol(graph, mis, req).final_state->probabilities();
    req.protocol = Protocol::AcqcZrot;
    const auto zrot = run_protocol(graph, mis, req).final_state->probabilities();
    double tv = 0.0;
    for (std::size_t k = 0; k < phased.size(); ++k) {
      tv += std::abs(phased[k] - zrot[k]);
    }
    worst = std::max(worst, 0.5 * tv);
  }
  return {"Z-rotation equivalence (N <= 4)", worst < 1e-6,
          "max total variation " + sci(worst) + " < 1e-6"};
}

int mis_size_by_enumeration(const UnitDiskGraph& graph) {
  const int n = graph.n_vertices();
  if (n > 24) throw Error(ErrorKind::Size, "enumeration limited to 24 nodes");
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& [u, v] : graph.edges()) {
      if (((mask >> u) & 1U) && ((mask >> v) & 1U)) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

CheckResult check_mis_oracle(const VerifyOptions& options) {
  Rng rng(options.seed + 3);
  int mismatches = 0;
  for (int k = 0; k < options.mis_instances; ++k) {
    const UnitDiskGraph graph =
        random_graph(rng, 1, options.mis_max_vertices);
    if (solve_mis_exact(graph).size != mis_size_by_enumeration(graph)) {
      ++mismatches;
    }
  }
  return {"MIS branch and bound vs enumeration", mismatches == 0,
          std::to_string(options.mis_instances - mismatches) + "/" +
              std::to_string(options.mis_instances) + " instances agree"};
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  return {check_gauge_residual(options), check_gauge_negative_control(options),
          check_dense_equivalence(options), check_single_qubit_cd(options),
          check_zrot_equivalence(options), check_mis_oracle(options)};
}

}  // namespace acqc
