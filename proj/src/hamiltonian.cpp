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

#include "acqc/hamiltonian.hpp"

#include <bit>
#include <cmath>

#include "acqc/error.hpp"

namespace acqc {

InteractionMatrix::InteractionMatrix(int n, double c6,
                                     std::vector<double> values)
    : n_(n), c6_(c6), values_(std::move(values)) {
  if (n < 0 || values_.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::Dimension, "interaction matrix must be n x n");
  }
  for (int i = 0; i < n; ++i) {
    if (values_[i * n + i] != 0.0) {
      throw Error(ErrorKind::Parameter, "interaction diagonal must be zero");
    }
    for (int j = i + 1; j < n; ++j) {
      if (values_[i * n + j] != values_[j * n + i]) {
        throw Error(ErrorKind::Parameter, "interaction matrix not symmetric");
      }
    }
  }
}

InteractionMatrix build_interactions(const UnitDiskGraph& graph, double c6) {
  if (!(c6 > 0.0)) throw Error(ErrorKind::Parameter, "c6 must be positive");
  const int n = graph.n_vertices();
  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = graph.distance(i, j);
      if (!(r > 0.0)) {
        throw Error(ErrorKind::Geometry, "coincident atoms " +
                                             std::to_string(i) + " and " +
                                             std::to_string(j));
      }
      const double r2 = r * r;
      values[i * n + j] = values[j * n + i] = c6 / (r2 * r2 * r2);
    }
  }
  return InteractionMatrix(n, c6, std::move(values));
}

InteractionMatrix truncate_interactions(const InteractionMatrix& j,
                                        const UnitDiskGraph& graph,
                                        double cutoff) {
  const int n = j.size();
  std::vector<double> values(j.values().begin(), j.values().end());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && graph.distance(a, b) > cutoff) values[a * n + b] = 0.0;
    }
  }
  return InteractionMatrix(n, j.c6(), std::move(values));
}

InteractionMatrix zero_interactions(int n) {
  return InteractionMatrix(n, 0.0,
                           std::vector<double>(static_cast<std::size_t>(n) * n));
}

HamiltonianTerms drive_terms(const ControlPoint& c) {
  return {0.5 * c.omega * std::cos(c.phi), -0.5 * c.omega * std::sin(c.phi),
          -c.delta, 1.0};
}

RydbergHamiltonian::RydbergHamiltonian(InteractionMatrix interactions,
                                       DriveSchedule schedule)
    : interactions_(std::move(interactions)), schedule_(std::move(schedule)) {
  const int n = interactions_.size();
  if (n < 1 || n > defaults::kSimulationQubitCap) {
    throw Error(ErrorKind::Size,
                std::to_string(n) + " qubits outside the simulation range 1.." +
                    std::to_string(defaults::kSimulationQubitCap));
  }
  diagonal_.resize(std::size_t{1} << n);
  kernels::interaction_diagonal(n, interactions_.values(), diagonal_);
}

HamiltonianTerms RydbergHamiltonian::terms(double t) const {
  return drive_terms(schedule_.at(t));
}

void RydbergHamiltonian::apply(const HamiltonianTerms& terms,
                               std::span<const cplx> in,
                               std::span<cplx> out) const {
  kernels::apply_parallel(terms, n_qubits(), diagonal_, in, out);
}

StateVector apply_hamiltonian(const RydbergHamiltonian& h, double t,
                              const StateVector& psi) {
  if (psi.dimension() != h.dimension()) {
    throw Error(ErrorKind::Dimension,
                "state has " + std::to_string(psi.dimension()) +
                    " amplitudes, Hamiltonian acts on " +
                    std::to_string(h.dimension()));
  }
  std::vector<cplx> out(h.dimension());
  h.apply(h.terms(t), psi.amplitudes(), out);
  return StateVector(h.n_qubits(), std::move(out));
}

Eigen::MatrixXcd embed_single_site(const Eigen::Matrix2cd& op, int site,
                                   int n_qubits) {
  // Qubit 0 is the least significant bit, i.e. the rightmost factor.
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = n_qubits - 1; q >= 0; --q) {
    const Eigen::Matrix2cd factor =
        q == site ? op : Eigen::Matrix2cd::Identity().eval();
    Eigen::MatrixXcd next(result.rows() * 2, result.cols() * 2);
    for (Eigen::Index r = 0; r < result.rows(); ++r) {
      for (Eigen::Index c = 0; c < result.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = result(r, c) * factor;
      }
    }
    result = std::move(next);
  }
  return result;
}

Eigen::MatrixXcd dense_from_terms(int n_qubits, const HamiltonianTerms& terms,
                                  const InteractionMatrix& interactions) {
  if (n_qubits > defaults::kDenseQubitCap) {
    throw Error(ErrorKind::Size, "dense construction limited to " +
                                     std::to_string(defaults::kDenseQubitCap) +
                                     " qubits");
  }
  if (interactions.size() != n_qubits) {
    throw Error(ErrorKind::Dimension, "interaction size mismatch");
  }
  const cplx i1{0.0, 1.0};
  Eigen::Matrix2cd sx, sy, num;
  sx << 0, 1, 1, 0;
  sy << 0, -i1, i1, 0;
  num << 0, 0, 0, 1;
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int q = 0; q < n_qubits; ++q) {
    m += embed_single_site(terms.x * sx + terms.y * sy + terms.number * num, q,
                           n_qubits);
  }
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    double v = 0.0;
    for (int a = 0; a < n_qubits; ++a) {
      for (int b = a + 1; b < n_qubits; ++b) {
        if (((idx >> a) & 1) && ((idx >> b) & 1)) v += interactions(a, b);
      }
    }
    m(idx, idx) += terms.interaction * v;
  }
  return m;
}

Eigen::MatrixXcd build_dense(const RydbergHamiltonian& h, double t) {
  return dense_from_terms(h.n_qubits(), h.terms(t), h.interactions());
}

CdTerms cd_terms(const ControlJet& base) {
  const auto& [om, de, ph] = base.value;
  const double d = om * om + de * de;
  if (!(d > 0.0)) {
    throw Error(ErrorKind::SingularSchedule, "Omega^2 + Delta^2 vanishes");
  }
  const double q = (om * base.rate.delta - de * base.rate.omega) / (2 * d);
  const double p = om * de * base.rate.phi / (2 * d);
  const double s = std::sin(ph);
  const double c = std::cos(ph);
  return {-q * s + p * c, -q * c - p * s, om * om * base.rate.phi / d};
}

CdCoefficients::CdCoefficients(DriveSchedule base) : base_(std::move(base)) {
  const double floor = base_.limits().denominator_floor();
  const int n = base_.check_samples();
  for (int k = 0; k < n; ++k) {
    const double t = base_.total_time() * k / (n - 1);
    const ControlPoint c = base_.at(t);
    if (c.omega * c.omega + c.delta * c.delta < floor) {
      throw Error(ErrorKind::SingularSchedule,
                  "Omega^2 + Delta^2 below the floor at t = " +
                      std::to_string(t));
    }
  }
}

CdTerms CdCoefficients::at(double t) const { return cd_terms(base_.jet(t)); }

CdCoefficients cd_coefficients(const DriveSchedule& base) {
  return CdCoefficients(base);
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

GaugeResidual gauge_residual(const DriveSchedule& base, double t, int n_qubits,
                             std::optional<CdTerms> override_terms) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw Error(ErrorKind::Size, "gauge residual is evaluated for 1..3 qubits");
  }
  const ControlJet jet = base.jet(t);
  const CdTerms f = override_terms ? *override_terms : cd_terms(jet);
  const InteractionMatrix none = zero_interactions(n_qubits);

  HamiltonianTerms h_terms = drive_terms(jet.value);
  h_terms.interaction = 0.0;
  const double s = std::sin(jet.value.phi);
  const double c = std::cos(jet.value.phi);
  const double om = jet.value.omega;
  const HamiltonianTerms dh_terms{
      0.5 * jet.rate.omega * c - 0.5 * om * jet.rate.phi * s,
      -0.5 * jet.rate.omega * s - 0.5 * om * jet.rate.phi * c,
      -jet.rate.delta, 0.0};
  const HamiltonianTerms cd{f.f_x, f.f_y, f.f_z, 0.0};

  const Eigen::MatrixXcd h = dense_from_terms(n_qubits, h_terms, none);
  const Eigen::MatrixXcd dh = dense_from_terms(n_qubits, dh_terms, none);
  const Eigen::MatrixXcd a = dense_from_terms(n_qubits, cd, none);
  const cplx i1{0.0, 1.0};
  const Eigen::MatrixXcd x = dh - i1 * (h * a - a * h);
  const Eigen::MatrixXcd commutator = x * h - h * x;

  GaugeResidual r;
  r.residual = operator_norm(commutator);
  r.scale = operator_norm(dh) * operator_norm(h);
  r.scaled = r.residual == 0.0 ? 0.0 : r.residual / r.scale;
  return r;
}

GaugeResidual gauge_residual(const RydbergHamiltonian& h, double t) {
  for (double j : h.interactions().values()) {
    if (j != 0.0) {
      throw Error(ErrorKind::Precondition,
                  "gauge condition is only solved at zero interactions");
    }
  }
  return gauge_residual(h.schedule(), t, h.n_qubits());
}

}  // namespace acqc
