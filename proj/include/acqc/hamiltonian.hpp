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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "acqc/defaults.hpp"
#include "acqc/graph.hpp"
#include "acqc/kernels.hpp"
#include "acqc/schedule.hpp"
#include "acqc/state.hpp"

namespace acqc {

/// Symmetric all-to-all van der Waals couplings J_ij = C6 / r_ij^6.
class InteractionMatrix {
 public:
  InteractionMatrix(int n, double c6, std::vector<double> values);

  int size() const { return n_; }
  double c6() const { return c6_; }
  double operator()(int i, int j) const { return values_[i * n_ + j]; }
  std::span<const double> values() const { return values_; }

 private:
  int n_;
  double c6_;
  std::vector<double> values_;
};

InteractionMatrix build_interactions(const UnitDiskGraph& graph,
                                     double c6 = defaults::kC6);
/// Zeroes every coupling beyond the cutoff (speed studies only).
InteractionMatrix truncate_interactions(const InteractionMatrix& j,
                                        const UnitDiskGraph& graph,
                                        double cutoff);
InteractionMatrix zero_interactions(int n);

/// Drive coefficients of the Rydberg Hamiltonian at one instant.
HamiltonianTerms drive_terms(const ControlPoint& c);

/// Drive schedule bound to an interaction matrix. The interaction diagonal is
/// computed once at construction; the drive only rescales popcounts.
class RydbergHamiltonian {
 public:
  RydbergHamiltonian(InteractionMatrix interactions, DriveSchedule schedule);

  int n_qubits() const { return interactions_.size(); }
  std::size_t dimension() const { return std::size_t{1} << n_qubits(); }
  const InteractionMatrix& interactions() const { return interactions_; }
  const DriveSchedule& schedule() const { return schedule_; }
  std::span<const double> interaction_diagonal() const { return diagonal_; }

  HamiltonianTerms terms(double t) const;

  /// out = H(terms) in.
  void apply(const HamiltonianTerms& terms, std::span<const cplx> in,
             std::span<cplx> out) const;

 private:
  InteractionMatrix interactions_;
  DriveSchedule schedule_;
  std::vector<double> diagonal_;
};

StateVector apply_hamiltonian(const RydbergHamiltonian& h, double t,
                              const StateVector& psi);

/// Explicit 2^N x 2^N matrix (N <= 12). Built from Pauli Kronecker products,
/// independently of the matrix-free kernels.
Eigen::MatrixXcd build_dense(const RydbergHamiltonian& h, double t);
Eigen::MatrixXcd dense_from_terms(int n_qubits, const HamiltonianTerms& terms,
                                  const InteractionMatrix& interactions);

/// Single-site operator embedded at qubit `site` of `n_qubits`.
Eigen::MatrixXcd embed_single_site(const Eigen::Matrix2cd& op, int site,
                                   int n_qubits);

/// H_CD = f_x sum sigma^x + f_y sum sigma^y + f_z sum n at one instant.
struct CdTerms {
  double f_x = 0.0;
  double f_y = 0.0;
  double f_z = 0.0;
};

CdTerms cd_terms(const ControlJet& base);

/// Counterdiabatic coefficients of a base schedule as functions of time.
class CdCoefficients {
 public:
  explicit CdCoefficients(DriveSchedule base);

  CdTerms at(double t) const;
  const DriveSchedule& base() const { return base_; }

 private:
  DriveSchedule base_;
};

CdCoefficients cd_coefficients(const DriveSchedule& base);

struct GaugeResidual {
  double residual = 0.0;  // || [dH/dt - i[H, H_CD], H] ||_2
  double scale = 0.0;     // ||dH/dt||_2 * ||H||_2
  double scaled = 0.0;    // residual / scale (0 when both vanish)
};

/// Gauge-condition residual for the drive part alone (J = 0), dense, with
/// analytic waveform derivatives. `override_terms` replaces the computed
/// coefficients (negative controls).
GaugeResidual gauge_residual(const DriveSchedule& base, double t, int n_qubits,
                             std::optional<CdTerms> override_terms = {});

/// Same check on a bound Hamiltonian; every coupling must be zero since the
/// ansatz solves the gauge condition only without interactions.
GaugeResidual gauge_residual(const RydbergHamiltonian& h, double t);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);

}  // namespace acqc
