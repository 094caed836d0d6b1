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

#include "acqc/kernels.hpp"

#include <bit>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace acqc {

HamiltonianTerms combine(const HamiltonianTerms& lhs, double a,
                         const HamiltonianTerms& rhs, double b) {
  return {a * lhs.x + b * rhs.x, a * lhs.y + b * rhs.y,
          a * lhs.number + b * rhs.number,
          a * lhs.interaction + b * rhs.interaction};
}

namespace kernels {

namespace {

// Plain arithmetic; std::complex operator* carries inf/nan recovery branches.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx scale(double s, cplx a) { return {s * a.real(), s * a.imag()}; }

std::size_t n_chunks(std::size_t n) {
  return (n + kReductionChunk - 1) / kReductionChunk;
}

}  // namespace

void apply_serial(const HamiltonianTerms& terms, int n_qubits,
                  std::span<const double> interaction_diagonal,
                  std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  // <1|H|0> = x + iy and <0|H|1> = x - iy on every site.
  const cplx from_set{terms.x, -terms.y};
  const cplx from_clear{terms.x, terms.y};
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const double diag = terms.number * std::popcount(idx) +
                        terms.interaction * interaction_diagonal[idx];
    cplx acc = scale(diag, in[idx]);
    for (int q = 0; q < n_qubits; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      const cplx c = (idx & bit) ? from_clear : from_set;
      acc += mul(c, in[idx ^ bit]);
    }
    out[idx] = acc;
  }
}

void apply_parallel(const HamiltonianTerms& terms, int n_qubits,
                    std::span<const double> interaction_diagonal,
                    std::span<const cplx> in, std::span<cplx> out) {
  const auto dim = static_cast<std::ptrdiff_t>(std::size_t{1} << n_qubits);
  const cplx from_set{terms.x, -terms.y};
  const cplx from_clear{terms.x, terms.y};
  const double number = terms.number;
  const double interaction = terms.interaction;
  const double* __restrict vdiag = interaction_diagonal.data();
  const double* __restrict src = reinterpret_cast<const double*>(in.data());
  double* __restrict dst = reinterpret_cast<double*>(out.data());
  const double sr = from_set.real(), si = from_set.imag();
  const double cr = from_clear.real(), ci = from_clear.imag();

#pragma omp parallel
  {
    // Interleaved (re, im) doubles so the pair loops vectorise.
#pragma omp for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < dim; ++idx) {
      const double diag =
          number * std::popcount(static_cast<std::size_t>(idx)) +
          interaction * vdiag[idx];
      dst[2 * idx] = diag * src[2 * idx];
      dst[2 * idx + 1] = diag * src[2 * idx + 1];
    }
    // Pair sweeps per qubit; the implicit barrier keeps the per-amplitude
    // accumulation order identical to apply_serial.
#pragma omp for schedule(static)
    for (std::ptrdiff_t lo = 0; lo < dim; lo += 2) {
      const double ar = src[2 * lo], ai = src[2 * lo + 1];
      const double br = src[2 * lo + 2], bi = src[2 * lo + 3];
      dst[2 * lo] += sr * br - si * bi;
      dst[2 * lo + 1] += sr * bi + si * br;
      dst[2 * lo + 2] += cr * ar - ci * ai;
      dst[2 * lo + 3] += cr * ai + ci * ar;
    }
    for (int q = 1; q < n_qubits; ++q) {
      const std::ptrdiff_t bit = std::ptrdiff_t{1} << q;
      const std::ptrdiff_t half = dim / 2;
      // Pair p has its clear partner at (p / bit) * 2 bit + p % bit.
#pragma omp for schedule(static)
      for (std::ptrdiff_t p0 = 0; p0 < half; p0 += bit) {
        const std::ptrdiff_t base = 2 * (2 * p0);
        const double* __restrict s0 = src + base;
        const double* __restrict s1 = src + base + 2 * bit;
        double* __restrict d0 = dst + base;
        double* __restrict d1 = dst + base + 2 * bit;
#pragma omp simd
        for (std::ptrdiff_t k = 0; k < bit; ++k) {
          const double ar = s0[2 * k], ai = s0[2 * k + 1];
          const double br = s1[2 * k], bi = s1[2 * k + 1];
          d0[2 * k] += sr * br - si * bi;
          d0[2 * k + 1] += sr * bi + si * br;
          d1[2 * k] += cr * ar - ci * ai;
          d1[2 * k + 1] += cr * ai + ci * ar;
        }
      }
    }
  }
}

double norm_squared_serial(std::span<const cplx> v) {
  double total = 0.0;
  for (std::size_t c = 0; c < n_chunks(v.size()); ++c) {
    double partial = 0.0;
    const std::size_t end = std::min(v.size(), (c + 1) * kReductionChunk);
    for (std::size_t k = c * kReductionChunk; k < end; ++k) {
      partial += v[k].real() * v[k].real() + v[k].imag() * v[k].imag();
    }
    total += partial;
  }
  return total;
}

double norm_squared_parallel(std::span<const cplx> v) {
  const auto chunks = static_cast<std::ptrdiff_t>(n_chunks(v.size()));
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double acc = 0.0;
    const std::size_t end =
        std::min(v.size(), static_cast<std::size_t>(c + 1) * kReductionChunk);
    for (std::size_t k = c * kReductionChunk; k < end; ++k) {
      acc += v[k].real() * v[k].real() + v[k].imag() * v[k].imag();
    }
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

cplx dot_serial(std::span<const cplx> a, std::span<const cplx> b) {
  cplx total{};
  for (std::size_t c = 0; c < n_chunks(a.size()); ++c) {
    double re = 0.0, im = 0.0;
    const std::size_t end = std::min(a.size(), (c + 1) * kReductionChunk);
    for (std::size_t k = c * kReductionChunk; k < end; ++k) {
      re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
      im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    total += cplx{re, im};
  }
  return total;
}

cplx dot_parallel(std::span<const cplx> a, std::span<const cplx> b) {
  const auto chunks = static_cast<std::ptrdiff_t>(n_chunks(a.size()));
  std::vector<cplx> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double re = 0.0, im = 0.0;
    const std::size_t end =
        std::min(a.size(), static_cast<std::size_t>(c + 1) * kReductionChunk);
    for (std::size_t k = c * kReductionChunk; k < end; ++k) {
      re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
      im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    partial[c] = {re, im};
  }
  cplx total{};
  for (const cplx& p : partial) total += p;
  return total;
}

void axpy_parallel(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) y[k] += mul(alpha, x[k]);
}

double lanczos_update(std::span<cplx> w, std::span<const cplx> v,
                      std::span<const cplx> v_prev, cplx a, double b) {
  const auto chunks = static_cast<std::ptrdiff_t>(n_chunks(w.size()));
  const bool has_prev = !v_prev.empty();
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    double acc = 0.0;
    const std::size_t end =
        std::min(w.size(), static_cast<std::size_t>(c + 1) * kReductionChunk);
    for (std::size_t k = c * kReductionChunk; k < end; ++k) {
      cplx r = w[k] - mul(a, v[k]);
      if (has_prev) r -= scale(b, v_prev[k]);
      w[k] = r;
      acc += r.real() * r.real() + r.imag() * r.imag();
    }
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void scale_into(double s, std::span<const cplx> src, std::span<cplx> dst) {
  const auto n = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) dst[k] = scale(s, src[k]);
}

void interaction_diagonal(int n_qubits, std::span<const double> couplings,
                          std::span<double> out) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  out[0] = 0.0;
  // V(x) = V(x without its lowest bit) + couplings of that bit to the rest.
  for (std::size_t idx = 1; idx < dim; ++idx) {
    const int low = std::countr_zero(idx);
    const std::size_t rest = idx & (idx - 1);
    double add = 0.0;
    for (std::size_t r = rest; r; r &= r - 1) {
      add += couplings[low * n_qubits + std::countr_zero(r)];
    }
    out[idx] = out[rest] + add;
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace acqc
