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
#include "qmeter/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "qmeter/errors.hpp"

namespace qmeter {
namespace {

void require_dim(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimensions differ");
}

// Tr[(x sqrt(rho))^dagger (x sqrt(rho))], i.e. Tr[x^dagger x rho] for any x.
double squared_norm_in(const Op& x, const DensityState& rho) {
  return (x * rho.sqrt()).squaredNorm();
}

}  // namespace

Spread spread(const Pom& x, const DensityState& rho) {
  const Distribution d = born_distribution(x, rho);
  double mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < d.labels.size(); ++k) {
    mean += d.labels[k] * d.probs[k];
    second += d.labels[k] * d.labels[k] * d.probs[k];
  }
  const double variance = std::max(0.0, second - mean * mean);
  return {mean, variance, std::sqrt(variance)};
}

double operator_variance(const Op& x, const DensityState& rho) {
  require_dim(static_cast<int>(x.rows()), rho.dim(), "operator_variance");
  const double mean = trace_product(x, rho.matrix()).real();
  return std::max(0.0, squared_norm_in(x, rho) - mean * mean);
}

bool is_compatible(const Pom& x, const Observable& a, double tol) {
  require_dim(x.dim(), a.dim(), "is_compatible");
  for (const Op& e : x.effects()) {
    for (const Op& p : a.projectors()) {
      if (operator_norm(commutator(e, p)) > tol) return false;
    }
  }
  return true;
}

void require_compatible(const Pom& x, const Observable& a, double tol) {
  if (!is_compatible(x, a, tol)) {
    throw CompatibilityError("POM effects do not commute with the observable's projectors");
  }
}

JointDistribution compatible_joint(const Pom& x, const Observable& a, const DensityState& rho,
                                   double tol) {
  require_dim(x.dim(), rho.dim(), "compatible_joint");
  require_compatible(x, a, tol);
  JointDistribution mu;
  double clamped = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Op er = x.effects()[k] * rho.matrix();
    for (std::size_t l = 0; l < a.size(); ++l) {
      double p = trace_product(a.projectors()[l], er).real();
      if (p < 0.0) {
        clamped -= p;
        p = 0.0;
      }
      mu.labels.push_back({x.outcomes()[k], a.outcomes()[l]});
      mu.probs.push_back(p);
    }
  }
  if (clamped > kClampedMassTol) {
    throw CompatibilityError("compatible_joint: " + std::to_string(clamped) +
                             " of probability mass was negative");
  }
  return mu;
}

double precision(const Pom& x, const Observable& a, const DensityState& rho) {
  const JointDistribution mu = compatible_joint(x, a, rho);
  double total = 0.0;
  for (std::size_t i = 0; i < mu.probs.size(); ++i) {
    const double gap = mu.labels[i][0] - mu.labels[i][1];
    total += gap * gap * mu.probs[i];
  }
  return std::sqrt(total);
}

bool is_unbiased(const Pom& x, const Observable& a, double tol) {
  require_dim(x.dim(), a.dim(), "is_unbiased");
  return operator_norm(x.first_moment() - a.matrix()) <= tol;
}

PrecisionDecomposition precision_decomposition(const Pom& x, const Observable& a,
                                               const DensityState& rho) {
  require_dim(x.dim(), rho.dim(), "precision_decomposition");
  require_compatible(x, a);
  const Op first = x.first_moment();
  return {spread(x, rho).variance, operator_variance(first, rho),
          squared_norm_in(a.matrix() - first, rho)};
}

DiagonalSupport diagonal_support_test(const JointDistribution& mu, double tol) {
  std::vector<double> axis;
  for (const auto& label : mu.labels) {
    if (label.size() != 2) throw InvalidArgument("diagonal_support_test: labels must be pairs");
    axis.push_back(label[0]);
    axis.push_back(label[1]);
  }
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  const int n = static_cast<int>(axis.size());
  if (n > 12) throw InvalidArgument("diagonal_support_test: more than 12 distinct labels");

  auto position = [&](double v) {
    return static_cast<int>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
  };
  Eigen::MatrixXd cell = Eigen::MatrixXd::Zero(n, n);
  double moment = 0.0;
  for (std::size_t i = 0; i < mu.probs.size(); ++i) {
    const double x = mu.labels[i][0], y = mu.labels[i][1];
    const double p = std::max(0.0, mu.probs[i]);
    cell(position(x), position(y)) += p;
    moment += (x - y) * (x - y) * p;
  }

  // Subset sums by lowest set bit: mass(D1 x D2) and mass((D1 n D2) x R).
  const std::uint32_t subsets = 1u << n;
  const Eigen::VectorXd row_mass = cell.rowwise().sum();
  std::vector<double> diagonal_mass(subsets, 0.0);
  for (std::uint32_t s = 1; s < subsets; ++s) {
    const int low = __builtin_ctz(s);
    diagonal_mass[s] = diagonal_mass[s & (s - 1)] + row_mass(low);
  }
  double mismatch = 0.0;
  std::vector<double> column_mass(n);
  std::vector<double> box(subsets);
  for (std::uint32_t d1 = 0; d1 < subsets; ++d1) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        if (d1 & (1u << i)) s += cell(i, j);
      }
      column_mass[j] = s;
    }
    box[0] = 0.0;
    for (std::uint32_t d2 = 1; d2 < subsets; ++d2) {
      box[d2] = box[d2 & (d2 - 1)] + column_mass[__builtin_ctz(d2)];
      mismatch = std::max(mismatch, std::abs(box[d2] - diagonal_mass[d1 & d2]));
    }
  }
  return {moment, mismatch, moment <= tol, mismatch <= tol};
}

UncertaintyCheck robertson_check(const Observable& a, const Observable& b,
                                 const DensityState& rho, double slack) {
  require_dim(a.dim(), b.dim(), "robertson_check");
  const double lhs = spread(Pom::from_observable(a), rho).stddev *
                     spread(Pom::from_observable(b), rho).stddev;
  const double rhs = 0.5 * std::abs(commutator_trace(a.matrix(), b.matrix(), rho));
  return {lhs, rhs, lhs >= rhs - slack};
}

UncertaintyCheck holevo_check(const Pom& x, const Pom& y, const DensityState& rho, double slack) {
  require_dim(x.dim(), y.dim(), "holevo_check");
  const double lhs = spread(x, rho).stddev * spread(y, rho).stddev;
  const double rhs = 0.5 * std::abs(commutator_trace(x.first_moment(), y.first_moment(), rho));
  return {lhs, rhs, lhs >= rhs - slack};
}

bool pom_equals_observable(const Pom& x, const Observable& a, double tol) {
  if (x.dim() != a.dim()) return false;
  std::vector<std::size_t> kept_x, kept_a;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (operator_norm(x.effects()[k]) > tol) kept_x.push_back(k);
  }
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (operator_norm(a.projectors()[l]) > tol) kept_a.push_back(l);
  }
  if (kept_x.size() != kept_a.size()) return false;
  for (std::size_t k : kept_x) {
    const auto match = std::find_if(kept_a.begin(), kept_a.end(), [&](std::size_t l) {
      return a.outcomes()[l] == x.outcomes()[k];
    });
    if (match == kept_a.end()) return false;
    if (operator_norm(x.effects()[k] - a.projectors()[*match]) > tol) return false;
  }
  return true;
}

std::vector<DensityState> spanning_states(int dim) {
  std::vector<DensityState> states;
  for (int i = 0; i < dim; ++i) states.push_back(DensityState::basis(dim, i));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Ket plus = Ket::Zero(dim), twisted = Ket::Zero(dim);
      plus(i) = r;
      plus(j) = r;
      twisted(i) = r;
      twisted(j) = Complex(0.0, r);
      states.push_back(DensityState::pure(plus));
      states.push_back(DensityState::pure(twisted));
    }
  }
  return states;
}

bool precision_vanishes_everywhere(const Pom& x, const Observable& a, double tol) {
  for (const DensityState& rho : spanning_states(x.dim())) {
    const double eps = precision(x, a, rho);
    if (eps * eps > tol) return false;
  }
  return true;
}

}  // namespace qmeter
