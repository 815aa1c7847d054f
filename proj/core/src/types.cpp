// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qmeter/types.hpp"

#include <cmath>
#include <string>

#include "qmeter/errors.hpp"

namespace qmeter {
namespace {

bool all_finite(const Op& a) { return a.allFinite(); }

void require_square(const Op& a, int dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " operator");
  }
  if (!all_finite(a)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

void require_distinct_finite(const std::vector<double>& labels, const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(labels[i])) throw InvalidArgument(std::string(what) + ": non-finite label");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) {
        throw InvalidArgument(std::string(what) + ": duplicate outcome label " +
                              std::to_string(labels[i]));
      }
    }
  }
}

}  // namespace

DensityState DensityState::from_matrix(Op rho, double tol) {
  if (rho.rows() < 1 || rho.rows() != rho.cols()) {
    throw DimensionError("DensityState: matrix must be square and non-empty");
  }
  require_square(rho, static_cast<int>(rho.rows()), "DensityState");
  if (!is_hermitian(rho, tol)) throw InvalidArgument("DensityState: matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) {
    throw InvalidArgument("DensityState: trace differs from 1");
  }
  const Eigensystem es = hermitian_eigen(rho, tol);
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) < -tol) throw InvalidArgument("DensityState: negative eigenvalue");
    roots(i) = es.values(i) > 0.0 ? std::sqrt(es.values(i)) : 0.0;
  }
  Op root = es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return DensityState(std::move(rho), std::move(root));
}

DensityState DensityState::pure(const Ket& psi, double tol) {
  if (psi.size() < 1) throw DimensionError("DensityState::pure: empty vector");
  if (std::abs(psi.norm() - 1.0) > tol) throw InvalidArgument("DensityState::pure: not a unit vector");
  const Ket unit = psi / psi.norm();
  Op rho = projector(unit);
  // sqrt(|psi><psi|) = |psi><psi|
  return DensityState(rho, rho);
}

DensityState DensityState::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("DensityState::maximally_mixed: dim must be positive");
  const Op rho = identity(dim) / static_cast<double>(dim);
  return DensityState(rho, identity(dim) / std::sqrt(static_cast<double>(dim)));
}

DensityState DensityState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw DimensionError("DensityState::basis: index out of range");
  Ket e = Ket::Zero(dim);
  e(index) = 1.0;
  return pure(e);
}

double DensityState::purity() const { return trace_product(rho_, rho_).real(); }

Observable::Observable(std::vector<double> outcomes, std::vector<Op> projectors)
    : outcomes_(std::move(outcomes)), projectors_(std::move(projectors)) {
  matrix_ = Op::Zero(projectors_.front().rows(), projectors_.front().cols());
  for (std::size_t k = 0; k < outcomes_.size(); ++k) matrix_ += outcomes_[k] * projectors_[k];
}

Observable Observable::from_projectors(std::vector<double> outcomes, std::vector<Op> projectors,
                                       double tol) {
  if (outcomes.empty() || outcomes.size() != projectors.size()) {
    throw InvalidArgument("Observable: need one projector per outcome");
  }
  const int dim = static_cast<int>(projectors.front().rows());
  if (dim < 1) throw DimensionError("Observable: empty projector");
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!std::isfinite(outcomes[k])) throw InvalidArgument("Observable: non-finite label");
    if (k > 0 && !(outcomes[k] > outcomes[k - 1])) {
      throw InvalidArgument("Observable: outcome labels must be strictly increasing");
    }
    require_square(projectors[k], dim, "Observable");
    if (!is_hermitian(projectors[k], tol)) throw InvalidArgument("Observable: projector not Hermitian");
    if (operator_norm(projectors[k] * projectors[k] - projectors[k]) > tol) {
      throw InvalidArgument("Observable: operator is not idempotent");
    }
  }
  Op total = Op::Zero(dim, dim);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    total += projectors[k];
    for (std::size_t l = 0; l < k; ++l) {
      if (operator_norm(projectors[k] * projectors[l]) > tol) {
        throw InvalidArgument("Observable: projectors are not mutually orthogonal");
      }
    }
  }
  if (operator_norm(total - identity(dim)) > tol) {
    throw InvalidArgument("Observable: projectors do not sum to the identity");
  }
  return Observable(std::move(outcomes), std::move(projectors));
}

Observable Observable::from_operator(const Op& h, double cluster_tol) {
  return spectral_pvm(h, cluster_tol);
}

Pom Pom::from_effects(std::vector<double> outcomes, std::vector<Op> effects, double tol) {
  if (outcomes.empty() || outcomes.size() != effects.size()) {
    throw InvalidArgument("Pom: need one effect per outcome");
  }
  require_distinct_finite(outcomes, "Pom");
  const int dim = static_cast<int>(effects.front().rows());
  if (dim < 1) throw DimensionError("Pom: empty effect");
  Op total = Op::Zero(dim, dim);
  for (const Op& e : effects) {
    require_square(e, dim, "Pom");
    const Eigensystem es = hermitian_eigen(e, tol);
    if (es.values(0) < -tol) throw InvalidArgument("Pom: effect is not positive semidefinite");
    total += e;
  }
  if (operator_norm(total - identity(dim)) > tol) {
    throw InvalidArgument("Pom: effects do not sum to the identity");
  }
  return Pom(std::move(outcomes), std::move(effects));
}

Pom Pom::from_observable(const Observable& a) { return Pom(a.outcomes(), a.projectors()); }

Op Pom::first_moment() const {
  Op out = Op::Zero(dim(), dim());
  for (std::size_t k = 0; k < size(); ++k) out += outcomes_[k] * effects_[k];
  return out;
}

Op Pom::second_moment() const {
  Op out = Op::Zero(dim(), dim());
  for (std::size_t k = 0; k < size(); ++k) out += outcomes_[k] * outcomes_[k] * effects_[k];
  return out;
}

Instrument Instrument::from_kraus(std::vector<double> outcomes,
                                  std::vector<std::vector<Op>> kraus_sets, double tol) {
  if (outcomes.empty() || outcomes.size() != kraus_sets.size()) {
    throw InvalidArgument("Instrument: need one Kraus set per outcome");
  }
  require_distinct_finite(outcomes, "Instrument");
  if (kraus_sets.front().empty()) throw InvalidArgument("Instrument: empty Kraus set");
  const int dim = static_cast<int>(kraus_sets.front().front().rows());
  if (dim < 1) throw DimensionError("Instrument: empty Kraus operator");
  Op total = Op::Zero(dim, dim);
  for (const auto& set : kraus_sets) {
    if (set.empty()) throw InvalidArgument("Instrument: empty Kraus set");
    for (const Op& k : set) {
      require_square(k, dim, "Instrument");
      total += k.adjoint() * k;
    }
  }
  if (operator_norm(total - identity(dim)) > tol) {
    throw InvalidArgument("Instrument: sum of K^dagger K differs from the identity");
  }
  return Instrument(std::move(outcomes), std::move(kraus_sets));
}

std::size_t Instrument::kraus_count() const {
  std::size_t n = 0;
  for (const auto& set : kraus_) n += set.size();
  return n;
}

std::optional<std::size_t> Instrument::index_of(double outcome) const {
  for (std::size_t k = 0; k < outcomes_.size(); ++k) {
    if (std::abs(outcomes_[k] - outcome) <= 1e-12 * std::max(1.0, std::abs(outcome))) return k;
  }
  return std::nullopt;
}

Op Instrument::apply(std::size_t k, const Op& rho) const {
  Op out = Op::Zero(rho.rows(), rho.cols());
  for (const Op& kr : kraus_[k]) out += kr * rho * kr.adjoint();
  return out;
}

MeasurementScheme MeasurementScheme::create(DensityState probe_state, Op coupling,
                                            std::vector<Observable> meters, double tol) {
  const int probe = probe_state.dim();
  if (coupling.rows() != coupling.cols() || coupling.rows() % probe != 0 ||
      coupling.rows() / probe < 1) {
    throw DimensionError("MeasurementScheme: coupling dimension is not a multiple of the probe");
  }
  if (!coupling.allFinite()) throw InvalidArgument("MeasurementScheme: non-finite coupling");
  const int n = static_cast<int>(coupling.rows());
  if (operator_norm(coupling.adjoint() * coupling - identity(n)) > tol) {
    throw InvalidArgument("MeasurementScheme: coupling is not unitary");
  }
  if (meters.empty()) throw InvalidArgument("MeasurementScheme: at least one meter is required");
  for (const Observable& m : meters) {
    if (m.dim() != probe) throw DimensionError("MeasurementScheme: meter does not act on the probe");
  }
  for (std::size_t i = 0; i < meters.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (const Op& p : meters[i].projectors()) {
        for (const Op& q : meters[j].projectors()) {
          if (operator_norm(commutator(p, q)) > tol) {
            throw CompatibilityError("MeasurementScheme: meters do not commute");
          }
        }
      }
    }
  }
  return MeasurementScheme(std::move(probe_state), std::move(coupling), std::move(meters));
}

Hamiltonian Hamiltonian::from_matrix(Op h, double hbar, double tol) {
  if (h.rows() < 1 || h.rows() != h.cols()) throw DimensionError("Hamiltonian: matrix must be square");
  if (!h.allFinite()) throw InvalidArgument("Hamiltonian: non-finite entry");
  if (!is_hermitian(h, tol)) throw InvalidArgument("Hamiltonian: matrix is not Hermitian");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("Hamiltonian: hbar must be positive");
  return Hamiltonian(std::move(h), hbar);
}

Hamiltonian Hamiltonian::zero(int dim) { return Hamiltonian(Op::Zero(dim, dim), 1.0); }

Op Hamiltonian::propagator(double t) const { return unitary_exponential(h_, t / hbar_); }

}  // namespace qmeter
