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

#include "acqc/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "acqc/error.hpp"
#include "acqc/kernels.hpp"
#include "acqc/rng.hpp"

namespace acqc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
// Gauss-Legendre nodes and the two-exponential commutator-free weights.
constexpr double kNode1 = 0.5 - kSqrt3 / 6;
constexpr double kNode2 = 0.5 + kSqrt3 / 6;
constexpr double kWeightA = 0.25 + kSqrt3 / 6;
constexpr double kWeightB = 0.25 - kSqrt3 / 6;

// c = exp(-i tau T) e_0 for the symmetric tridiagonal T(alpha, beta).
std::vector<cplx> tridiagonal_exp_first_column(const std::vector<double>& alpha,
                                               const std::vector<double>& beta,
                                               int m, double tau) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  const Eigen::MatrixXd& q = eig.eigenvectors();
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  std::vector<cplx> c(m);
  for (int k = 0; k < m; ++k) {
    cplx acc{};
    for (int l = 0; l < m; ++l) {
      acc += q(k, l) * std::polar(1.0, -tau * lambda(l)) * q(0, l);
    }
    c[k] = acc;
  }
  return c;
}

}  // namespace

void propagate_krylov(const RydbergHamiltonian& h,
                      const HamiltonianTerms& terms, double tau,
                      StateVector& psi, double tolerance, int max_dim,
                      long* matvecs) {
  const std::size_t dim = psi.dimension();
  const int m_cap = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(std::max(max_dim, 2)),
                            dim));
  std::vector<std::vector<cplx>> basis(1, std::vector<cplx>(dim));
  std::vector<double> alpha, beta;
  std::vector<cplx> w(dim);

  double remaining = tau;
  while (remaining > 0.0) {
    const double beta0 = std::sqrt(kernels::norm_squared_parallel(
        psi.amplitudes()));
    if (beta0 == 0.0) return;
    kernels::scale_into(1.0 / beta0, psi.amplitudes(), basis[0]);
    alpha.clear();
    beta.clear();

    double step = remaining;
    std::vector<cplx> coeffs;
    for (int j = 0; j < m_cap; ++j) {
      h.apply(terms, basis[j], w);
      if (matvecs) ++*matvecs;
      const double a_j = kernels::dot_parallel(basis[j], w).real();
      const std::span<const cplx> prev =
          j > 0 ? std::span<const cplx>(basis[j - 1]) : std::span<const cplx>();
      double b_sq = kernels::lanczos_update(w, basis[j], prev, a_j,
                                            j > 0 ? beta[j - 1] : 0.0);
      // One corrective pass against v_j keeps short recurrences orthogonal.
      const cplx drift = kernels::dot_parallel(basis[j], w);
      b_sq = kernels::lanczos_update(w, basis[j], {}, drift, 0.0);
      const double b_j = std::sqrt(b_sq);
      alpha.push_back(a_j + drift.real());
      beta.push_back(b_j);

      const int m = j + 1;
      coeffs = tridiagonal_exp_first_column(alpha, beta, m, step);
      const bool invariant = b_j <= 1e-14 * (std::abs(alpha.back()) + 1.0);
      const double error = beta0 * b_j * std::abs(coeffs[m - 1]);
      if (invariant || error <= tolerance * step / tau) break;
      if (m == m_cap) {
        // Shrink the substep until the available basis suffices.
        bool converged = false;
        while (!converged && step > tau * 1e-12) {
          step *= 0.5;
          coeffs = tridiagonal_exp_first_column(alpha, beta, m, step);
          converged = beta0 * b_j * std::abs(coeffs[m - 1]) <=
                      tolerance * step / tau;
        }
        if (!converged) {
          throw Error(ErrorKind::IntegrationFailure,
                      "Krylov propagator failed to converge");
        }
        break;
      }
      if (basis.size() < static_cast<std::size_t>(m + 1)) {
        basis.emplace_back(dim);
      }
      kernels::scale_into(1.0 / b_j, w, basis[m]);
    }

    std::vector<cplx>& out = psi.amplitudes();
    std::fill(out.begin(), out.end(), cplx{});
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      kernels::axpy_parallel(beta0 * coeffs[k], basis[k], out);
    }
    remaining -= step;
    if (remaining <= tau * 1e-14) remaining = 0.0;
  }
}

StateVector evolve_from(const RydbergHamiltonian& h, StateVector psi,
                        const EvolutionConfig& config, EvolutionStats* stats,
                        const StepObserver& observer) {
  if (psi.dimension() != h.dimension()) {
    throw Error(ErrorKind::Dimension, "initial state dimension mismatch");
  }
  if (config.order != 4) {
    throw Error(ErrorKind::Parameter, "only the fourth-order stepper exists");
  }
  const double total = h.schedule().total_time();
  const double dt_max = config.dt_max.value_or(total / 2000.0);
  if (!(dt_max > 0.0)) throw Error(ErrorKind::Parameter, "dt_max must be > 0");

  const auto n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(total / dt_max - 1e-9)));
  const double dt = total / static_cast<double>(n_steps);
  EvolutionStats local;
  for (long step = 0; step < n_steps; ++step) {
    const double t0 = total * static_cast<double>(step) / n_steps;
    const HamiltonianTerms h1 = h.terms(t0 + kNode1 * dt);
    const HamiltonianTerms h2 = h.terms(t0 + kNode2 * dt);
    propagate_krylov(h, combine(h1, kWeightA, h2, kWeightB), dt, psi,
                     config.krylov_tolerance, config.krylov_max_dim,
                     &local.matvecs);
    propagate_krylov(h, combine(h1, kWeightB, h2, kWeightA), dt, psi,
                     config.krylov_tolerance, config.krylov_max_dim,
                     &local.matvecs);
    const double norm = psi.norm();
    local.max_norm_drift = std::max(local.max_norm_drift, std::abs(norm - 1));
    if (std::abs(norm - 1) > config.norm_tolerance) {
      throw Error(ErrorKind::IntegrationFailure,
                  "norm drifted to " + std::to_string(norm) + " at t = " +
                      std::to_string(t0 + dt) + "; try a smaller dt_max");
    }
    if (config.renormalize) {
      for (auto& a : psi.amplitudes()) a /= norm;
    }
    ++local.steps;
    if (observer) observer(t0 + dt, psi);
  }
  if (stats) *stats = local;
  return psi;
}

StateVector evolve(const RydbergHamiltonian& h, const EvolutionConfig& config,
                   EvolutionStats* stats, const StepObserver& observer) {
  return evolve_from(h, StateVector(h.n_qubits()), config, stats, observer);
}

double ground_state_fidelity(const StateVector& psi, const MisSolution& mis) {
  if (mis.witnesses.empty()) {
    throw Error(ErrorKind::Precondition, "no MIS witnesses supplied");
  }
  double total = 0.0;
  for (std::uint64_t w : mis.witnesses) {
    if (w >= psi.dimension()) {
      throw Error(ErrorKind::Dimension, "witness outside the state space");
    }
    total += std::norm(psi[w]);
  }
  return total;
}

std::vector<SampleCount> sample_bitstrings(const StateVector& psi, int shots,
                                           std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorKind::Parameter, "shots must be >= 1");
  std::vector<double> cumulative(psi.dimension());
  double running = 0.0;
  for (std::size_t k = 0; k < cumulative.size(); ++k) {
    running += std::norm(psi[k]);
    cumulative[k] = running;
  }
  if (!(running > 0.0)) {
    throw Error(ErrorKind::Parameter, "cannot sample from a zero state");
  }
  Rng rng(seed);
  std::map<std::uint64_t, int> counts;
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // The first entry above u always carries nonzero probability.
    if (it == cumulative.end()) it = cumulative.end() - 1;
    ++counts[static_cast<std::uint64_t>(it - cumulative.begin())];
  }
  std::vector<SampleCount> out;
  out.reserve(counts.size());
  for (const auto& [b, c] : counts) out.push_back({b, c});
  return out;
}

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Linear: return "linear";
    case Protocol::Smooth: return "smooth";
    case Protocol::Acqc: return "acqc";
    case Protocol::AcqcZrot: return "acqc-zrot";
  }
  return "unknown";
}

Protocol protocol_from_string(const std::string& name) {
  if (name == "linear") return Protocol::Linear;
  if (name == "smooth") return Protocol::Smooth;
  if (name == "acqc") return Protocol::Acqc;
  if (name == "acqc-zrot") return Protocol::AcqcZrot;
  throw Error(ErrorKind::Parameter, "unknown protocol '" + name + "'");
}

DriveSchedule protocol_schedule(Protocol protocol, const HardwareLimits& limits,
                                double total_time, LimitPolicy policy,
                                const LinearOptions& linear) {
  const CdOptions cd_options{policy, defaults::kScheduleSamples};
  switch (protocol) {
    case Protocol::Linear: return linear_schedule(limits, total_time, linear);
    case Protocol::Smooth: return smooth_schedule(limits, total_time);
    case Protocol::Acqc:
      if (!limits.phase_controllable) {
        throw Error(ErrorKind::Parameter,
                    "phased ACQC needs phase control; use acqc-zrot");
      }
      return cd_transform(smooth_schedule(limits, total_time), cd_options);
    case Protocol::AcqcZrot:
      return z_rotation_transform(
          cd_transform(smooth_schedule(limits, total_time), cd_options),
          cd_options);
  }
  throw Error(ErrorKind::Parameter, "unknown protocol");
}

RunResult run_protocol(const UnitDiskGraph& graph, const RunRequest& request) {
  request.cost.validate();
  return run_protocol(graph, solve_mis_exact(graph, request.cost), request);
}

RunResult run_protocol(const UnitDiskGraph& graph, const MisSolution& mis,
                       const RunRequest& request) {
  if (request.shots < 1) {
    throw Error(ErrorKind::Parameter, "shots must be >= 1");
  }
  request.cost.validate();
  const int n = graph.n_vertices();
  if (n < 1 || n > defaults::kSimulationQubitCap) {
    throw Error(ErrorKind::Size, std::to_string(n) +
                                     " qubits outside the simulation cap");
  }
  InteractionMatrix j = build_interactions(graph, request.c6);
  if (request.interaction_cutoff) {
    j = truncate_interactions(j, graph, *request.interaction_cutoff);
  }
  DriveSchedule schedule =
      protocol_schedule(request.protocol, request.limits, request.total_time,
                        request.limit_policy, request.linear);
  RunResult result;
  result.limit_report = schedule.limit_report();
  const RydbergHamiltonian h(std::move(j), std::move(schedule));
  StateVector psi = evolve(h, request.evolution, &result.evolution);

  result.ground_population = ground_state_fidelity(psi, mis);
  for (const auto& s : sample_bitstrings(psi, request.shots, request.seed)) {
    result.samples.push_back(
        {s.bitstring, s.count, cost_energy(graph, s.bitstring, request.cost)});
  }
  result.shots = request.shots;
  result.protocol = request.protocol;
  result.total_time = request.total_time;
  result.seed = request.seed;
  result.cost = request.cost;
  result.c6 = request.c6;
  result.limits = request.limits;
  result.mis = mis;
  if (request.keep_final_state) result.final_state = std::move(psi);
  return result;
}

std::string bitstring_to_string(std::uint64_t mask, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q) {
    if ((mask >> q) & 1U) s[q] = '1';
  }
  return s;
}

std::uint64_t bitstring_from_string(const std::string& s) {
  if (s.size() > 64) throw Error(ErrorKind::Format, "bitstring too long");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') {
      mask |= std::uint64_t{1} << q;
    } else if (s[q] != '0') {
      throw Error(ErrorKind::Format, "bitstring characters must be 0 or 1");
    }
  }
  return mask;
}

nlohmann::json run_result_to_json(const RunResult& r, int n_qubits) {
  nlohmann::json j;
  j["protocol"] = to_string(r.protocol);
  j["T_us"] = r.total_time;
  j["seed"] = r.seed;
  j["shots"] = r.shots;
  j["cost"] = {{"A", r.cost.a}, {"B", r.cost.b}};
  j["c6"] = r.c6;
  j["unit_convention"] = defaults::kUnitConvention;
  j["bitstring_order"] = "character k is qubit k (qubit 0 first)";
  j["rng"] = Rng::kAlgorithm;
  j["ground_population"] = r.ground_population;
  j["mis"] = {{"size", r.mis.size}, {"energy", r.mis.energy}};
  j["schedule"] = {{"protocol", to_string(r.protocol)},
                   {"base", r.protocol == Protocol::Acqc ||
                                    r.protocol == Protocol::AcqcZrot
                                ? "smooth"
                                : ""},
                   {"limits", limits_to_json(r.limits)},
                   {"limit_report", limit_report_to_json(r.limit_report)}};
  j["evolution"] = {{"steps", r.evolution.steps},
                    {"matvecs", r.evolution.matvecs},
                    {"max_norm_drift", r.evolution.max_norm_drift}};
  j["samples"] = nlohmann::json::array();
  for (const auto& s : r.samples) {
    j["samples"].push_back({{"bitstring", bitstring_to_string(s.bitstring,
                                                              n_qubits)},
                            {"count", s.count},
                            {"energy", s.energy}});
  }
  return j;
}

}  // namespace acqc
