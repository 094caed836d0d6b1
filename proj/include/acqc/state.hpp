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
#include <cstdint>
#include <vector>

namespace acqc {

using cplx = std::complex<double>;

/// 2^N amplitudes. Basis index bit i is qubit i; bit set means the Rydberg
/// state |1>.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::vector<cplx>& amplitudes() { return amplitudes_; }
  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  cplx& operator[](std::size_t i) { return amplitudes_[i]; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amplitudes_;
};

double distance(const StateVector& a, const StateVector& b);

}  // namespace acqc
