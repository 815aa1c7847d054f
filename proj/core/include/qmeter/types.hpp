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
#ifndef QMETER_TYPES_HPP_
#define QMETER_TYPES_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "qmeter/operator.hpp"
#include "qmeter/tolerance.hpp"

namespace qmeter {

/// Density operator: Hermitian, positive semidefinite, unit trace.
class DensityState {
 public:
  static DensityState from_matrix(Op rho, double tol = kEqualityTol);
  /// |psi><psi| for a unit vector psi.
  static DensityState pure(const Ket& psi, double tol = kEqualityTol);
  static DensityState maximally_mixed(int dim);
  /// |index><index| in the computational basis.
  static DensityState basis(int dim, int index);

  const Op& matrix() const { return rho_; }
  /// Positive square root, computed once at construction.
  const Op& sqrt() const { return sqrt_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double purity() const;

 private:
  DensityState(Op rho, Op sqrt) : rho_(std::move(rho)), sqrt_(std::move(sqrt)) {}
  Op rho_;
  Op sqrt_;
};

/// Sharp observable: orthogonal projectors summing to identity, labelled by
/// strictly increasing real outcomes.
class Observable {
 public:
  static Observable from_projectors(std::vector<double> outcomes,
                                    std::vector<Op> projectors,
                                    double tol = kEqualityTol);
  /// Spectral measure of a Hermitian operator (see spectral_pvm).
  static Observable from_operator(const Op& h, double cluster_tol = kClusterTol);

  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<Op>& projectors() const { return projectors_; }
  /// Sum of a_k P_k.
  const Op& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  std::size_t size() const { return outcomes_.size(); }

 private:
  Observable(std::vector<double> outcomes, std::vector<Op> projectors);
  std::vector<double> outcomes_;
  std::vector<Op> projectors_;
  Op matrix_;
};

/// Positive-operator-valued measure on a finite set of real outcomes.
class Pom {
 public:
  static Pom from_effects(std::vector<double> outcomes, std::vector<Op> effects,
                          double tol = kEqualityTol);
  static Pom from_observable(const Observable& a);

  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<Op>& effects() const { return effects_; }
  int dim() const { return static_cast<int>(effects_.front().rows()); }
  std::size_t size() const { return outcomes_.size(); }

  /// Sum of x_k E_k.
  Op first_moment() const;
  /// Sum of x_k^2 E_k.
  Op second_moment() const;

 private:
  Pom(std::vector<double> outcomes, std::vector<Op> effects)
      : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {}
  std::vector<double> outcomes_;
  std::vector<Op> effects_;
};

/// Completely positive instrument: per outcome, a Kraus set whose operation
/// is rho -> sum_j K rho K^dagger. The total operation is trace preserving.
class Instrument {
 public:
  static Instrument from_kraus(std::vector<double> outcomes,
                               std::vector<std::vector<Op>> kraus_sets,
                               double tol = kEqualityTol);

  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<Op>>& kraus_sets() const { return kraus_; }
  int dim() const { return static_cast<int>(kraus_.front().front().rows()); }
  std::size_t size() const { return outcomes_.size(); }
  std::size_t kraus_count() const;

  std::optional<std::size_t> index_of(double outcome) const;
  /// Unnormalized operation of outcome \p k applied to \p rho.
  Op apply(std::size_t k, const Op& rho) const;

 private:
  Instrument(std::vector<double> outcomes, std::vector<std::vector<Op>> kraus)
      : outcomes_(std::move(outcomes)), kraus_(std::move(kraus)) {}
  std::vector<double> outcomes_;
  std::vector<std::vector<Op>> kraus_;
};

/// Probe space, probe state, coupling unitary on system (x) probe, and a
/// list of mutually compatible meter observables on the probe.
class MeasurementScheme {
 public:
  static MeasurementScheme create(DensityState probe_state, Op coupling,
                                  std::vector<Observable> meters,
                                  double tol = kEqualityTol);

  int system_dim() const { return static_cast<int>(coupling_.rows()) / probe_dim(); }
  int probe_dim() const { return probe_state_.dim(); }
  const DensityState& probe_state() const { return probe_state_; }
  const Op& coupling() const { return coupling_; }
  const std::vector<Observable>& meters() const { return meters_; }

 private:
  MeasurementScheme(DensityState probe_state, Op coupling, std::vector<Observable> meters)
      : probe_state_(std::move(probe_state)),
        coupling_(std::move(coupling)),
        meters_(std::move(meters)) {}
  DensityState probe_state_;
  Op coupling_;
  std::vector<Observable> meters_;
};

/// Hermitian generator of time evolution, U_t = exp(-i t H / hbar).
class Hamiltonian {
 public:
  static Hamiltonian from_matrix(Op h, double hbar = 1.0, double tol = kEqualityTol);
  static Hamiltonian zero(int dim);

  const Op& matrix() const { return h_; }
  double hbar() const { return hbar_; }
  int dim() const { return static_cast<int>(h_.rows()); }
  Op propagator(double t) const;

 private:
  Hamiltonian(Op h, double hbar) : h_(std::move(h)), hbar_(hbar) {}
  Op h_;
  double hbar_;
};

struct Distribution {
  std::vector<double> labels;
  std::vector<double> probs;
};

/// Distribution over outcome tuples; labels[i] is the tuple of probs[i].
struct JointDistribution {
  std::vector<std::vector<double>> labels;
  std::vector<double> probs;
};

struct PosteriorEntry {
  double outcome;
  double probability;
  /// Empty when the outcome has probability at or below the floor.
  std::optional<DensityState> posterior;
};

struct PosteriorFamily {
  std::vector<PosteriorEntry> entries;
};

}  // namespace qmeter

#endif  // QMETER_TYPES_HPP_
