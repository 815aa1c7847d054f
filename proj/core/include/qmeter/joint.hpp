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
#ifndef QMETER_JOINT_HPP_
#define QMETER_JOINT_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

/// POM on a two-dimensional outcome grid; effect(i, j) belongs to
/// (x_outcomes[i], y_outcomes[j]).
class JointPom {
 public:
  static JointPom from_grid(std::vector<double> x_outcomes, std::vector<double> y_outcomes,
                            std::vector<std::vector<Op>> effects, double tol = kEqualityTol);

  const std::vector<double>& x_outcomes() const { return x_; }
  const std::vector<double>& y_outcomes() const { return y_; }
  const Op& effect(std::size_t i, std::size_t j) const { return effects_[i][j]; }
  int dim() const { return static_cast<int>(effects_.front().front().rows()); }

 private:
  JointPom(std::vector<double> x, std::vector<double> y, std::vector<std::vector<Op>> effects)
      : x_(std::move(x)), y_(std::move(y)), effects_(std::move(effects)) {}
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<std::vector<Op>> effects_;
};

std::pair<Pom, Pom> marginals(const JointPom& m);

struct JointUncertaintyReport {
  double epsilon_a;
  double epsilon_b;
  double delta_x;
  double delta_y;
  double commutator;  // |Tr[[A, B] rho]|
  bool check1;        // epsilon_a epsilon_b >= commutator / 2
  bool check2;        // delta_x delta_y >= commutator
};

/// Both inequalities for a coexistent pair. Throws BiasError or
/// CompatibilityError if a marginal is not an unbiased compatible
/// measurement of its target.
JointUncertaintyReport joint_uncertainty_report(const JointPom& m, const Observable& a,
                                                const Observable& b, const DensityState& rho,
                                                double slack = 1e-10);

/// Interacting realization of m: probe C^(nx*ny) in |0>, a coupling from
/// the dilation V psi = sum_ij sqrt(M_ij) psi (x) e_ij, and the two meters
/// sum x_i |e_ij><e_ij| and sum y_j |e_ij><e_ij|.
MeasurementScheme interacting_realization(const JointPom& m, std::uint64_t seed = 0);

struct NoiseOperator {
  Op op;  // U^dagger (1 (x) M_i) U - A_i (x) 1
  double mean;
  double variance;
};

/// Noise operators of a scheme against target observables, with moments in
/// rho (x) sigma. The probe state must be pure.
std::vector<NoiseOperator> noise_operators(const MeasurementScheme& s,
                                           const std::vector<Observable>& observables,
                                           const DensityState& rho);

/// The JXY fixture generalized to grid half-width s >= sqrt(2):
/// M_xy = (1 + (x/s^2) sigma_x + (y/s^2) sigma_y) / 4, x, y in {-s, s}.
JointPom jxy_joint_pom(double scale = 1.4142135623730951);

/// Same construction for arbitrary qubit observables A = n.sigma and
/// B = m.sigma with unit Bloch vectors n and m, optionally padded by
/// a tensor identity of dimension \p ancilla_dim.
JointPom bloch_joint_pom(const Eigen::Vector3d& n, const Eigen::Vector3d& m, double scale,
                         int ancilla_dim = 1);

}  // namespace qmeter

#endif  // QMETER_JOINT_HPP_
