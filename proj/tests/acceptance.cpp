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

// Acceptance run: one PASS/FAIL line per criterion, sub-checks indented.
// Usage: acceptance [path to the acqc binary]

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acqc/evolve.hpp"
#include "acqc/experiment.hpp"
#include "acqc/hamiltonian.hpp"
#include "acqc/rng.hpp"
#include "acqc/verify.hpp"
#include "oracles.hpp"

using namespace acqc;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fix(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Report {
  int failed = 0;

  void sub(bool pass, const std::string& text) {
    std::cout << "    " << (pass ? "ok   " : "FAIL ") << text << "\n";
  }
  void note(const std::string& text) { std::cout << "    " << text << "\n"; }
  bool criterion(int id, const std::string& name, bool pass, double seconds) {
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name
              << "  (" << fix(seconds, 1) << " s)\n"
              << std::flush;
    if (!pass) ++failed;
    return pass;
  }
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

UnitDiskGraph kings(std::uint64_t seed, int n) {
  GridSpec spec;
  spec.rows = 4;
  spec.cols = 4;
  spec.n_nodes = n;
  spec.seed = seed;
  return generate_kings_graph(spec);
}

// Sum over qubits of sigma^x, sigma^y and n, assembled from the oracle.
struct DriveOperators {
  Eigen::MatrixXcd sx, sy, num;
  explicit DriveOperators(int n) {
    const std::vector<double> zero(n * n, 0.0);
    sx = oracle::hamiltonian(n, 2.0, 0.0, 0.0, zero);
    sy = oracle::hamiltonian(n, 2.0, 0.0, -std::numbers::pi / 2, zero);
    num = -oracle::hamiltonian(n, 0.0, 1.0, 0.0, zero);
  }
};

double spectral_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

// || [dH - i[H, H_CD], H] || / (||dH|| ||H||) with dense oracle operators.
double scaled_gauge_residual(const DriveSchedule& s, double t, int n,
                             double fy_scale) {
  const DriveOperators ops(n);
  const ControlJet c = s.jet(t);
  const double om = c.value.omega, phi = c.value.phi;
  const Eigen::MatrixXcd h = 0.5 * om * (std::cos(phi) * ops.sx - std::sin(phi) * ops.sy) -
                             c.value.delta * ops.num;
  const double dx = 0.5 * (c.rate.omega * std::cos(phi) -
                           om * std::sin(phi) * c.rate.phi);
  const double dy = -0.5 * (c.rate.omega * std::sin(phi) +
                            om * std::cos(phi) * c.rate.phi);
  const Eigen::MatrixXcd dh = dx * ops.sx + dy * ops.sy - c.rate.delta * ops.num;
  const CdTerms f = cd_terms(c);
  const Eigen::MatrixXcd hcd = f.f_x * ops.sx + fy_scale * f.f_y * ops.sy + f.f_z * ops.num;
  const std::complex<double> i(0.0, 1.0);
  const Eigen::MatrixXcd g = dh - i * (h * hcd - hcd * h);
  const double scale = spectral_norm(dh) * spectral_norm(h);
  return spectral_norm(g * h - h * g) / scale;
}

void criterion_gauge(Report& rep) {
  Timer timer;
  Rng rng(101);
  const HardwareLimits limits;
  double worst = 0.0, least_corrupt = 1e300;
  for (int phased = 0; phased < 2; ++phased) {
    for (int n = 1; n <= 3; ++n) {
      const double total = 0.5 + rng.uniform();
      const DriveSchedule base = phased ? phased_smooth_schedule(limits, total)
                                        : smooth_schedule(limits, total);
      for (int k = 0; k < 10; ++k) {
        const double t = total * (0.02 + 0.96 * rng.uniform());
        worst = std::max(worst, scaled_gauge_residual(base, t, n, 1.0));
        least_corrupt =
            std::min(least_corrupt, scaled_gauge_residual(base, t, n, 2.0));
      }
    }
  }
  const bool a = worst < 1e-8, b = least_corrupt > 1e-3;
  rep.sub(a, "max scaled residual " + sci(worst) + " < 1e-8 (N = 1..3, phi = 0 and phased, 10 times each)");
  rep.sub(b, "negative control f_y x 2: min scaled residual " + sci(least_corrupt) + " > 1e-3");
  rep.criterion(1, "gauge-potential exactness", a && b, timer.seconds());
}

void criterion_single_qubit(Report& rep) {
  Timer timer;
  const UnitDiskGraph single({Point{0.0, 0.0}}, 1.0);
  const MisSolution mis = solve_mis_exact(single);
  auto run = [&](Protocol p, double total) {
    RunRequest req;
    req.protocol = p;
    req.total_time = total;
    req.shots = 1;
    req.limit_policy = LimitPolicy::Report;
    const double lib = run_protocol(single, mis, req).ground_population;
    const auto s = protocol_schedule(p, req.limits, total, LimitPolicy::Report);
    const Eigen::VectorXcd psi = oracle::evolve(1, s, {0.0}, 4000);
    return std::pair{lib, std::norm(psi(1))};
  };
  bool pass = true;
  double max_oracle_gap = 0.0;
  for (double total : {0.05, 0.1, 0.5, 1.0}) {
    const auto [f, ref] = run(Protocol::Acqc, total);
    max_oracle_gap = std::max(max_oracle_gap, std::abs(f - ref));
    const bool ok = f >= 0.999;
    pass = pass && ok;
    rep.sub(ok, "ACQC T = " + fix(total, 2) + " us: fidelity " + fix(f, 8) + " >= 0.999");
  }
  const auto [smooth, smooth_ref] = run(Protocol::Smooth, 0.05);
  const auto [acqc, acqc_ref] = run(Protocol::Acqc, 0.05);
  max_oracle_gap = std::max(max_oracle_gap, std::abs(smooth - smooth_ref));
  const bool gap = acqc - smooth >= 0.05;
  rep.sub(gap, "smooth T = 0.05 us: fidelity " + fix(smooth, 6) + ", below ACQC by " +
                   fix(acqc - smooth, 6) + " >= 0.05");
  const bool oracle_ok = max_oracle_gap < 1e-4;
  rep.sub(oracle_ok, "dense exponential-midpoint reference agrees within " + sci(max_oracle_gap) + " < 1e-4");
  rep.criterion(2, "single-qubit CD exactness", pass && gap && oracle_ok, timer.seconds());
}

void criterion_zrot(Report& rep) {
  Timer timer;
  Rng rng(303);
  double worst = 0.0;
  const int graphs = 6;
  for (int g = 0; g < graphs; ++g) {
    const int n = 2 + g % 3;
    const UnitDiskGraph graph = kings(rng.next(), n);
    const MisSolution mis = solve_mis_exact(graph);
    RunRequest req;
    req.total_time = 0.1 + 0.9 * rng.uniform();
    req.shots = 1;
    req.limit_policy = LimitPolicy::Report;
    req.protocol = Protocol::Acqc;
    const auto phased = run_protocol(graph, mis, req).final_state->probabilities();
    req.protocol = Protocol::AcqcZrot;
    const auto zrot = run_protocol(graph, mis, req).final_state->probabilities();
    double tv = 0.0;
    for (std::size_t k = 0; k < phased.size(); ++k) tv += std::abs(phased[k] - zrot[k]);
    worst = std::max(worst, 0.5 * tv);
    rep.note("graph " + std::to_string(g) + ": N = " + std::to_string(n) + ", T = " +
             fix(req.total_time, 3) + " us, TV " + sci(0.5 * tv));
  }
  const bool pass = worst < 1e-6;
  rep.sub(pass, "max total variation " + sci(worst) + " < 1e-6 over " + std::to_string(graphs) + " graphs");
  rep.criterion(3, "Z-rotation equivalence", pass, timer.seconds());
}

void criterion_dense(Report& rep) {
  Timer timer;
  Rng rng(404);
  const Protocol protocols[] = {Protocol::Linear, Protocol::Smooth, Protocol::Acqc,
                                Protocol::AcqcZrot};
  double worst = 0.0;
  const int draws = 24;
  for (int d = 0; d < draws; ++d) {
    const int n = d < 8 ? 10 : 1 + static_cast<int>(rng.below(10));
    const UnitDiskGraph g = kings(rng.next(), n);
    const InteractionMatrix j = build_interactions(g);
    const double total = 0.1 + 3.9 * rng.uniform();
    const RydbergHamiltonian h(
        j, protocol_schedule(protocols[d % 4], HardwareLimits{}, total, LimitPolicy::Report));
    const double t = total * rng.uniform();
    std::vector<cplx> amps(h.dimension());
    for (auto& a : amps) a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    const StateVector got = apply_hamiltonian(h, t, StateVector(n, amps));
    const auto c = h.schedule().at(t);
    const Eigen::MatrixXcd m = oracle::hamiltonian(
        n, c.omega, c.delta, c.phi, {j.values().begin(), j.values().end()});
    const Eigen::VectorXcd ref =
        m * Eigen::Map<const Eigen::VectorXcd>(amps.data(), amps.size());
    double num = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) num += std::norm(got.amplitudes()[k] - ref(k));
    worst = std::max(worst, std::sqrt(num) / ref.norm());
  }
  const bool pass = worst < 1e-12;
  rep.sub(pass, "max relative difference " + sci(worst) + " < 1e-12 over " + std::to_string(draws) +
                    " draws (N <= 10, all protocols)");
  rep.criterion(4, "matrix-free vs dense oracle", pass, timer.seconds());
}

std::vector<Instance> instances(std::uint64_t root, const std::vector<int>& sizes,
                                const std::string& prefix) {
  std::vector<Instance> out;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::uint64_t seed = root + k;
    out.push_back({prefix + std::to_string(k), kings(seed, sizes[k]), seed});
  }
  return out;
}

// ratio[instance][protocol][T]
using RatioTable = std::map<std::size_t, std::map<Protocol, std::map<double, double>>>;

RatioTable ratios(const SweepResult& r, Report& rep, bool& all_ok) {
  RatioTable table;
  for (const auto& cell : r.cells) {
    if (!cell.ok) {
      all_ok = false;
      rep.sub(false, "cell failed: " + cell.error);
      continue;
    }
    table[cell.instance][cell.protocol][cell.total_time] = cell.stats.approximation_ratio;
  }
  return table;
}

void criterion_ordering(Report& rep) {
  Timer timer;
  ExperimentConfig c;
  c.instances = instances(5000, {12, 13, 14, 12, 13}, "ord");
  c.protocols = {Protocol::Linear, Protocol::Smooth, Protocol::Acqc};
  c.times = {0.1, 1.0, 4.0};
  c.shots = 500;
  c.seed = 5;
  const auto result = run_sweep(c);
  bool all_ok = true;
  auto table = ratios(result, rep, all_ok);
  const std::size_t n = c.instances.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream line;
    line << c.instances[i].id << " (N = " << c.instances[i].graph.n_vertices() << ")";
    for (double t : c.times) {
      line << "  T=" << t << ": lin " << fix(table[i][Protocol::Linear][t], 3) << " smo "
           << fix(table[i][Protocol::Smooth][t], 3) << " acqc "
           << fix(table[i][Protocol::Acqc][t], 3);
    }
    rep.note(line.str());
  }
  bool pass = all_ok;
  for (double t : {0.1, 1.0}) {
    int ordered = 0, acqc_wins = 0, smooth_wins = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rl = table[i][Protocol::Linear][t];
      const double rs = table[i][Protocol::Smooth][t];
      const double ra = table[i][Protocol::Acqc][t];
      acqc_wins += ra > rs;
      smooth_wins += rs >= rl;
      ordered += ra > rs && rs >= rl;
    }
    const bool ok = 2 * ordered > static_cast<int>(n);
    pass = pass && ok;
    rep.sub(ok, "T = " + fix(t, 1) + " us: r_ACQC > r_smooth >= r_linear on " + std::to_string(ordered) +
                    "/" + std::to_string(n) + " (strict majority needed)");
    rep.note("  r_ACQC > r_smooth on " + std::to_string(acqc_wins) + "/" + std::to_string(n) +
             ", r_smooth >= r_linear on " + std::to_string(smooth_wins) + "/" + std::to_string(n));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(table[i][Protocol::Acqc][4.0] - table[i][Protocol::Smooth][4.0]));
  }
  const bool converged = worst < 0.05;
  rep.sub(converged, "T = 4.0 us: max |r_ACQC - r_smooth| " + fix(worst, 4) + " < 0.05");
  rep.criterion(5, "ordering at short times and convergence at T = 4 us", pass && converged,
                timer.seconds());
}

void criterion_improvement(Report& rep) {
  Timer timer;
  ExperimentConfig c;
  std::vector<int> sizes;
  for (int k = 0; k < 20; ++k) sizes.push_back(10 + k % 5);
  c.instances = instances(9000, sizes, "imp");
  c.protocols = {Protocol::Smooth, Protocol::Acqc};
  c.times = {1.0};
  c.shots = 500;
  c.seed = 9;
  const auto result = run_sweep(c);
  bool all_ok = true;
  auto table = ratios(result, rep, all_ok);
  double ms = 0.0, ma = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ms += table[i][Protocol::Smooth][1.0];
    ma += table[i][Protocol::Acqc][1.0];
  }
  ms /= sizes.size();
  ma /= sizes.size();
  for (const auto& box : result.boxes) {
    rep.note("N = " + std::to_string(box.n_qubits) + " " + to_string(box.protocol) + ": median " +
             fix(box.ratio.median, 3) + " [" + fix(box.ratio.min, 3) + ", " + fix(box.ratio.max, 3) + "]");
  }
  const bool pass = all_ok && ma - ms >= 0.05 * ms;
  rep.sub(pass, "mean r_ACQC " + fix(ma, 4) + " - mean r_smooth " + fix(ms, 4) + " = " +
                    fix(ma - ms, 4) + " >= 0.05 * " + fix(ms, 4) + " (improvement " +
                    fix(100 * (ma - ms) / ms, 2) + "%)");
  rep.criterion(6, "mean improvement at T = 1 us over 20 graphs", pass, timer.seconds());
}

void criterion_mis(Report& rep) {
  Timer timer;
  Rng rng(707);
  int agree = 0;
  const int count = 50;
  int largest = 0;
  for (int k = 0; k < count; ++k) {
    const int n = 1 + static_cast<int>(rng.below(16));
    largest = std::max(largest, n);
    const UnitDiskGraph g = kings(rng.next(), n);
    const MisSolution bb = solve_mis_exact(g);
    const auto sets = oracle::all_mis(g);
    const bool size_ok = bb.size == std::popcount(sets.front());
    const bool witness_ok =
        std::all_of(bb.witnesses.begin(), bb.witnesses.end(), [&](std::uint64_t w) {
          return std::find(sets.begin(), sets.end(), w) != sets.end();
        });
    const bool full = bb.witnesses_truncated || bb.witnesses.size() == sets.size();
    agree += size_ok && witness_ok && full;
  }
  const bool pass = agree == count;
  rep.sub(pass, std::to_string(agree) + "/" + std::to_string(count) +
                    " instances agree on size and witnesses (N <= " + std::to_string(largest) + ")");
  rep.criterion(7, "MIS branch and bound vs enumeration", pass, timer.seconds());
}

void criterion_hygiene(Report& rep) {
  Timer timer;
  bool pass = true;
  const UnitDiskGraph g = kings(808, 10);
  const InteractionMatrix j = build_interactions(g);
  double drift = 0.0, halving = 0.0;
  for (Protocol p : {Protocol::Linear, Protocol::Smooth, Protocol::Acqc}) {
    for (double total : {0.1, 1.0}) {
      const RydbergHamiltonian h(j, protocol_schedule(p, HardwareLimits{}, total, LimitPolicy::Report));
      EvolutionConfig cfg;
      EvolutionStats stats;
      const StateVector coarse = evolve(h, cfg, &stats);
      drift = std::max({drift, stats.max_norm_drift, std::abs(coarse.norm() - 1.0)});
      cfg.dt_max = total / 4000;
      const StateVector fine = evolve(h, cfg);
      halving = std::max(halving, distance(coarse, fine));
    }
  }
  rep.sub(drift < 1e-6, "norm drift " + sci(drift) + " < 1e-6 (N = 10)");
  rep.sub(halving < 1e-8, "step halving changes the final state by " + sci(halving) + " < 1e-8 (N = 10)");
  pass = pass && drift < 1e-6 && halving < 1e-8;

  Rng rng(809);
  double fd = 0.0;
  const double total = 1.0;
  for (Protocol p : {Protocol::Linear, Protocol::Smooth, Protocol::Acqc, Protocol::AcqcZrot}) {
    const DriveSchedule s = protocol_schedule(p, HardwareLimits{}, total, LimitPolicy::Report);
    const double h = 1e-3 * total;
    for (int k = 0; k < 50; ++k) {
      double t = total * (0.01 + 0.98 * rng.uniform());
      // Keep the stencil off the trapezoid corners.
      if (p == Protocol::Linear && (std::abs(t - 0.1) < 5 * h || std::abs(t - 0.9) < 5 * h)) t += 0.05;
      const ControlJet c = s.jet(t);
      const std::array<double, 3> analytic{c.rate.omega, c.rate.delta, c.rate.phi};
      const std::array<double, 3> numeric{
          oracle::derivative([&](double x) { return s.at(x).omega; }, t, h),
          oracle::derivative([&](double x) { return s.at(x).delta; }, t, h),
          oracle::derivative([&](double x) { return s.at(x).phi; }, t, h)};
      for (int q = 0; q < 3; ++q) {
        fd = std::max(fd, std::abs(analytic[q] - numeric[q]) / std::max(1.0, std::abs(analytic[q])));
      }
    }
  }
  rep.sub(fd < 1e-6, "analytic vs finite-difference derivatives: max relative error " + sci(fd) +
                         " < 1e-6 (denominator floored at 1)");
  pass = pass && fd < 1e-6;

  const HardwareLimits limits;
  const DriveSchedule smooth = smooth_schedule(limits, total);
  const std::pair<std::string, DriveSchedule> cases[] = {
      {"linear", linear_schedule(limits, total)},
      {"smooth", smooth},
      {"CD of smooth", cd_transform(smooth, CdOptions{LimitPolicy::Report})}};
  for (const auto& [name, s] : cases) {
    const BoundaryReport b = validate_boundary(s, 1e-9);
    rep.sub(b.pass, name + " boundary: Omega " + sci(b.omega_start) + " / " + sci(b.omega_end) +
                        ", Delta " + fix(b.delta_start, 3) + " -> " + fix(b.delta_end, 3));
    pass = pass && b.pass;
  }
  rep.criterion(8, "numerical hygiene", pass, timer.seconds());
}

void criterion_determinism(Report& rep) {
  Timer timer;
  ExperimentConfig c;
  c.instances = instances(1200, {8, 9, 10}, "d_");
  c.protocols = {Protocol::Linear, Protocol::Smooth, Protocol::Acqc};
  c.times = {0.1, 1.0};
  c.shots = 500;
  c.seed = 12;
  c.jobs = 1;
  const std::string ref = aggregate_csv(c, run_sweep(c));
  bool pass = aggregate_csv(c, run_sweep(c)) == ref;
  rep.sub(pass, "repeated run with 1 worker is byte-identical");
  for (int jobs : {4, 8}) {
    c.jobs = jobs;
    const bool same = aggregate_csv(c, run_sweep(c)) == ref;
    rep.sub(same, std::to_string(jobs) + " workers: aggregate CSV byte-identical to 1 worker");
    pass = pass && same;
  }
  rep.criterion(9, "deterministic aggregate output", pass, timer.seconds());
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

void criterion_export(Report& rep, const std::string& cli) {
  Timer timer;
  std::string text;
  std::string source;
  if (!cli.empty()) {
    source = "acqc schedule --protocol acqc -T 1 -n 1001 --format csv";
    FILE* pipe = popen((cli + " schedule --protocol acqc -T 1 -n 1001 --format csv 2>/dev/null").c_str(), "r");
    if (pipe) {
      std::array<char, 4096> buf;
      std::size_t got;
      while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), got);
      pclose(pipe);
    }
  } else {
    source = "library export (no CLI path given)";
    text = schedule_to_csv(protocol_schedule(Protocol::Acqc, HardwareLimits{}, 1.0, LimitPolicy::Report), 1001);
  }
  const auto rows = parse_csv(text);
  bool pass = rows.size() == 1002 && rows[0] == std::vector<std::string>{"t", "omega", "delta", "phi"};
  rep.sub(pass, source + ": header t,omega,delta,phi and 1001 rows");
  if (pass) {
    const double first = std::stod(rows[1][1]), last = std::stod(rows.back()[1]);
    const bool ends = std::abs(first) <= 1e-12 && std::abs(last) <= 1e-12;
    rep.sub(ends, "endpoint Omega~ " + sci(first) + ", " + sci(last) + " (|.| <= 1e-12)");
    double jump = 0.0;
    for (std::size_t k = 2; k < rows.size(); ++k) {
      jump = std::max(jump, std::abs(std::stod(rows[k][3]) - std::stod(rows[k - 1][3])));
    }
    const bool smooth = jump < std::numbers::pi;
    rep.sub(smooth, "largest adjacent phi~ step " + fix(jump, 6) + " < pi");
    const bool meta = text.find("# config_hash=") != std::string::npos &&
                      text.find("# c6=") != std::string::npos;
    rep.sub(meta, "file carries config hash, units, cost and c6");
    pass = ends && smooth && meta;
  }
  rep.criterion(10, "hardware schedule export", pass, timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Report rep;
  Timer total;
  criterion_gauge(rep);
  criterion_single_qubit(rep);
  criterion_zrot(rep);
  criterion_dense(rep);
  criterion_ordering(rep);
  criterion_improvement(rep);
  criterion_mis(rep);
  criterion_hygiene(rep);
  criterion_determinism(rep);
  criterion_export(rep, cli);
  std::cout << (rep.failed == 0 ? "ALL PASS" : std::to_string(rep.failed) + " criteria FAILED")
            << "  (" << fix(total.seconds(), 1) << " s)\n";
  return rep.failed == 0 ? 0 : 1;
}
