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

#include "acqc/state.hpp"

#include <cmath>

#include "acqc/error.hpp"
#include "acqc/kernels.hpp"

namespace acqc {

StateVector::StateVector(int n_qubits) : StateVector(basis(n_qubits, 0)) {}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw Error(ErrorKind::Size, "unsupported qubit count");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw Error(ErrorKind::Dimension, "state needs 2^N amplitudes");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw Error(ErrorKind::Size, "unsupported qubit count");
  }
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) {
    throw Error(ErrorKind::Dimension, "basis index out of range");
  }
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm() const {
  return std::sqrt(kernels::norm_squared_parallel(amplitudes_));
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(amplitudes_[k]);
  return p;
}

double distance(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::Dimension, "state dimensions differ");
  }
  std::vector<cplx> diff(a.dimension());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = a[k] - b[k];
  return std::sqrt(kernels::norm_squared_serial(diff));
}

}  // namespace acqc
