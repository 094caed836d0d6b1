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

// Serial reference vs OpenMP kernels, plus one full propagator step.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "acqc/evolve.hpp"
#include "acqc/kernels.hpp"

namespace {

using acqc::cplx;

struct Fixture {
  explicit Fixture(int n) : n_qubits(n), dim(std::size_t{1} << n) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    couplings.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        couplings[i * n + j] = couplings[j * n + i] = std::abs(normal(rng));
      }
    }
    diagonal.resize(dim);
    acqc::kernels::interaction_diagonal(n, couplings, diagonal);
    in.resize(dim);
    out.resize(dim);
    for (auto& a : in) a = {normal(rng), normal(rng)};
  }

  int n_qubits;
  std::size_t dim;
  std::vector<double> couplings;
  std::vector<double> diagonal;
  std::vector<cplx> in, out;
  acqc::HamiltonianTerms terms{1.3, -0.4, -2.0, 1.0};
};

void BM_ApplySerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    acqc::kernels::apply_serial(f.terms, f.n_qubits, f.diagonal, f.in, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * f.dim * f.n_qubits);
}

void BM_ApplyParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    acqc::kernels::apply_parallel(f.terms, f.n_qubits, f.diagonal, f.in,
                                  f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * f.dim * f.n_qubits);
}

void BM_NormSerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(acqc::kernels::norm_squared_serial(f.in));
  }
}

void BM_NormParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(acqc::kernels::norm_squared_parallel(f.in));
  }
}

void BM_KrylovStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  acqc::GridSpec spec;
  spec.rows = 5;
  spec.cols = 5;
  spec.n_nodes = n;
  spec.seed = 3;
  const auto graph = acqc::generate_kings_graph(spec);
  const acqc::RydbergHamiltonian h(
      acqc::build_interactions(graph),
      acqc::smooth_schedule(acqc::HardwareLimits{}, 1.0));
  acqc::StateVector psi(n);
  for (auto _ : state) {
    acqc::propagate_krylov(h, h.terms(0.5), 5e-4, psi, 1e-13, 30);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}

}  // namespace

BENCHMARK(BM_ApplySerial)->DenseRange(10, 16, 2);
BENCHMARK(BM_ApplyParallel)->DenseRange(10, 16, 2);
BENCHMARK(BM_NormSerial)->Arg(14);
BENCHMARK(BM_NormParallel)->Arg(14);
BENCHMARK(BM_KrylovStep)->Arg(12)->Arg(15);

BENCHMARK_MAIN();
