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
#include "qmeter/joint.hpp"

#include <cmath>
#include <string>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/metrics.hpp"
#include "qmeter/models.hpp"

namespace qmeter {

JointPom JointPom::from_grid(std::vector<double> x_outcomes, std::vector<double> y_outcomes,
                             std::vector<std::vector<Op>> effects, double tol) {
  if (x_outcomes.empty() || y_outcomes.empty() || effects.size() != x_outcomes.size()) {
    throw InvalidArgument("JointPom: effect grid does not match the outcome axes");
  }
  for (const auto& row : effects) {
    if (row.size() != y_outcomes.size()) {
      throw InvalidArgument("JointPom: effect grid does not match the outcome axes");
    }
  }
  // Pom validation covers labels, positivity and completeness once the grid
  // is flattened; the flattened labels only need to be distinct.
  std::vector<double> flat_labels;
  std::vector<Op> flat_effects;
  for (std::size_t i = 0; i < x_outcomes.size(); ++i) {
    for (std::size_t j = 0; j < y_outcomes.size(); ++j) {
      flat_labels.push_back(static_cast<double>(flat_labels.size()));
      flat_effects.push_back(effects[i][j]);
    }
  }
  for (const auto* axis : {&x_outcomes, &y_outcomes}) {
    for (std::size_t i = 0; i < axis->size(); ++i) {
      if (!std::isfinite((*axis)[i])) throw InvalidArgument("JointPom: non-finite label");
      for (std::size_t j = 0; j < i; ++j) {
        if ((*axis)[i] == (*axis)[j]) throw InvalidArgument("JointPom: duplicate axis label");
      }
    }
  }
  Pom::from_effects(std::move(flat_labels), std::move(flat_effects), tol);
  return JointPom(std::move(x_outcomes), std::move(y_outcomes), std::move(effects));
}

std::pair<Pom, Pom> marginals(const JointPom& m) {
  const int d = m.dim();
  const std::size_t nx = m.x_outcomes().size(), ny = m.y_outcomes().size();
  std::vector<Op> ex(nx, Op::Zero(d, d)), ey(ny, Op::Zero(d, d));
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      ex[i] += m.effect(i, j);
      ey[j] += m.effect(i, j);
    }
  }
  return {Pom::from_effects(m.x_outcomes(), std::move(ex)),
          Pom::from_effects(m.y_outcomes(), std::move(ey))};
}

JointUncertaintyReport joint_uncertainty_report(const JointPom& m, const Observable& a,
                                                const Observable& b, const DensityState& rho,
                                                double slack) {
  const auto [x, y] = marginals(m);
  require_compatible(x, a);
  require_compatible(y, b);
  if (!is_unbiased(x, a)) throw BiasError("joint_uncertainty_report: X marginal is biased for A");
  if (!is_unbiased(y, b)) throw BiasError("joint_uncertainty_report: Y marginal is biased for B");

  JointUncertaintyReport r{};
  r.epsilon_a = precision(x, a, rho);
  r.epsilon_b = precision(y, b, rho);
  r.delta_x = spread(x, rho).stddev;
  r.delta_y = spread(y, rho).stddev;
  r.commutator = std::abs(commutator_trace(a.matrix(), b.matrix(), rho));
  r.check1 = r.epsilon_a * r.epsilon_b >= r.commutator / 2.0 - slack;
  r.check2 = r.delta_x * r.delta_y >= r.commutator - slack;
  return r;
}

MeasurementScheme interacting_realization(const JointPom& m, std::uint64_t seed) {
  const std::size_t nx = m.x_outcomes().size(), ny = m.y_outcomes().size();
  std::vector<Op> kraus;
  std::vector<double> x_of_index, y_of_index;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      kraus.push_back(psd_sqrt(m.effect(i, j)));
      x_of_index.push_back(m.x_outcomes()[i]);
      y_of_index.push_back(m.y_outcomes()[j]);
    }
  }
  const int n = std::max<int>(2, static_cast<int>(kraus.size()));
  while (static_cast<int>(x_of_index.size()) < n) {
    x_of_index.push_back(x_of_index.front());
    y_of_index.push_back(y_of_index.front());
  }
  return MeasurementScheme::create(DensityState::basis(n, 0), dilation_coupling(kraus, seed),
                                   {pointer_observable(x_of_index), pointer_observable(y_of_index)});
}

std::vector<NoiseOperator> noise_operators(const MeasurementScheme& s,
                                           const std::vector<Observable>& observables,
                                           const DensityState& rho) {
  if (observables.size() != s.meters().size()) {
    throw InvalidArgument("noise_operators: need one observable per meter");
  }
  if (std::abs(s.probe_state().purity() - 1.0) > kEqualityTol) {
    throw InvalidArgument("noise_operators: probe state must be pure");
  }
  const int d = s.system_dim();
  if (rho.dim() != d) throw DimensionError("noise_operators: state does not act on the system");
  const Op& u = s.coupling();
  const Op joint_state = tensor_product(rho.matrix(), s.probe_state().matrix());
  const Op probe_identity = identity(s.probe_dim());

  std::vector<NoiseOperator> out;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].dim() != d) throw DimensionError("noise_operators: observable dimension");
    Op n = u.adjoint() * tensor_product(identity(d), s.meters()[i].matrix()) * u -
           tensor_product(observables[i].matrix(), probe_identity);
    const double mean = trace_product(n, joint_state).real();
    const double second = trace_product(n * n, joint_state).real();
    out.push_back({std::move(n), mean, second - mean * mean});
  }
  return out;
}

JointPom bloch_joint_pom(const Eigen::Vector3d& n, const Eigen::Vector3d& m, double scale,
                         int ancilla_dim) {
  if (std::abs(n.norm() - 1.0) > kEqualityTol || std::abs(m.norm() - 1.0) > kEqualityTol) {
    throw InvalidArgument("bloch_joint_pom: Bloch vectors must be unit length");
  }
  if (!(scale > 0.0)) throw InvalidArgument("bloch_joint_pom: scale must be positive");
  if (ancilla_dim < 1) throw InvalidArgument("bloch_joint_pom: ancilla dimension must be positive");
  const Op a = n(0) * pauli::x() + n(1) * pauli::y() + n(2) * pauli::z();
  const Op b = m(0) * pauli::x() + m(1) * pauli::y() + m(2) * pauli::z();
  const std::vector<double> labels{-scale, scale};
  const double s2 = scale * scale;
  std::vector<std::vector<Op>> grid(2);
  for (double x : labels) {
    for (double y : labels) {
      const Op qubit = 0.25 * (identity(2) + (x / s2) * a + (y / s2) * b);
      grid[x < 0 ? 0 : 1].push_back(tensor_product(qubit, identity(ancilla_dim)));
    }
  }
  return JointPom::from_grid(labels, labels, std::move(grid));
}

JointPom jxy_joint_pom(double scale) {
  return bloch_joint_pom(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), scale);
}

}  // namespace qmeter
