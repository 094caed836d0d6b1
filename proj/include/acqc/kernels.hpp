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

#include <complex>
#include <cstddef>
#include <span>

namespace acqc {

/// H = x sum_i sigma^x_i + y sum_i sigma^y_i + number sum_i n_i
///     + interaction * V, with V the precomputed sum_{i<j} J_ij n_i n_j.
struct HamiltonianTerms {
  double x = 0.0;
  double y = 0.0;
  double number = 0.0;
  double interaction = 1.0;
};

/// a * lhs + b * rhs, term by term.
HamiltonianTerms combine(const HamiltonianTerms& lhs, double a,
                         const HamiltonianTerms& rhs, double b);

namespace kernels {

using cplx = std::complex<double>;

/// Reductions sum fixed-size chunks in index order so results do not depend
/// on the thread count.
inline constexpr std::size_t kReductionChunk = 4096;

/// Reference matvec: one amplitude at a time, qubits in increasing order.
void apply_serial(const HamiltonianTerms& terms, int n_qubits,
                  std::span<const double> interaction_diagonal,
                  std::span<const cplx> in, std::span<cplx> out);

/// OpenMP matvec. Each output amplitude is written by exactly one thread
/// and accumulated in the same order as apply_serial.
void apply_parallel(const HamiltonianTerms& terms, int n_qubits,
                    std::span<const double> interaction_diagonal,
                    std::span<const cplx> in, std::span<cplx> out);

double norm_squared_serial(std::span<const cplx> v);
double norm_squared_parallel(std::span<const cplx> v);

/// <a, b> = sum conj(a_k) b_k.
cplx dot_serial(std::span<const cplx> a, std::span<const cplx> b);
cplx dot_parallel(std::span<const cplx> a, std::span<const cplx> b);

/// y += alpha x.
void axpy_parallel(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

/// w -= a v + b v_prev, returning the new ||w||^2. v_prev may be empty.
double lanczos_update(std::span<cplx> w, std::span<const cplx> v,
                      std::span<const cplx> v_prev, cplx a, double b);

/// dst = s * src.
void scale_into(double s, std::span<const cplx> src, std::span<cplx> dst);

/// sum_{i<j} J_ij n_i n_j for every basis index, J row-major n x n.
void interaction_diagonal(int n_qubits, std::span<const double> couplings,
                          std::span<double> out);

int max_threads();

}  // namespace kernels
}  // namespace acqc
