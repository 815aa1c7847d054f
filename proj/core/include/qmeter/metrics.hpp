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
#ifndef QMETER_METRICS_HPP_
#define QMETER_METRICS_HPP_

#include <concepts>
#include <cstddef>

#include "qmeter/measurement.hpp"
#include "qmeter/types.hpp"

namespace qmeter {

/// Ex[f(X) || rho] = sum_k f(x_k) Tr[E_k rho].
template <std::invocable<double> F>
double moment(const Pom& x, F&& f, const DensityState& rho) {
  const Distribution d = born_distribution(x, rho);
  double total = 0.0;
  for (std::size_t k = 0; k < d.labels.size(); ++k) total += f(d.labels[k]) * d.probs[k];
  return total;
}

struct Spread {
  double mean;
  double variance;
  double stddev;
};

Spread spread(const Pom& x, const DensityState& rho);

/// Tr[X^2 rho] - Tr[X rho]^2 for an operator, evaluated through sqrt(rho).
double operator_variance(const Op& x, const DensityState& rho);

/// Throws CompatibilityError unless every effect commutes with every
/// projector within \p tol.
void require_compatible(const Pom& x, const Observable& a, double tol = kCompatibilityTol);
bool is_compatible(const Pom& x, const Observable& a, double tol = kCompatibilityTol);

/// mu(x_k, a_l) = Re Tr[E_k P_l rho], clamped at zero. Labels are (x_k, a_l)
/// in row-major order. Raises if more than 1e-9 of mass had to be clamped.
JointDistribution compatible_joint(const Pom& x, const Observable& a, const DensityState& rho,
                                   double tol = kCompatibilityTol);

/// Root-mean-square error of x as a measurement of a.
double precision(const Pom& x, const Observable& a, const DensityState& rho);

bool is_unbiased(const Pom& x, const Observable& a, double tol = kUnbiasedTol);

struct PrecisionDecomposition {
  double pom_variance;       // Var[X || rho]
  double operator_variance;  // Tr[X^2 rho] - Tr[X rho]^2 for X = sum x_k E_k
  double bias;               // Tr[(A - X)^2 rho]

  double squared_precision() const { return pom_variance - operator_variance + bias; }
};

PrecisionDecomposition precision_decomposition(const Pom& x, const Observable& a,
                                               const DensityState& rho);

struct DiagonalSupport {
  double off_diagonal_moment;    // sum (x - y)^2 mu(x, y)
  double max_marginal_mismatch;  // max |mu(D1 x D2) - mu((D1 n D2) x R)|
  bool by_moment;
  bool by_marginals;
  bool agree() const { return by_moment == by_marginals; }
  bool supported() const { return by_moment && by_marginals; }
};

/// Tests whether a grid measure lives on the diagonal, once through its
/// second moment about the diagonal and once by comparing mu(D1 x D2) with
/// mu((D1 n D2) x R) over every pair of label subsets. The subset scan is
/// exponential in the number of distinct labels (at most 12 accepted).
DiagonalSupport diagonal_support_test(const JointDistribution& mu, double tol = 1e-12);

struct UncertaintyCheck {
  double lhs;
  double rhs;
  bool holds;
};

/// Delta A Delta B >= |Tr[[A, B] rho]| / 2.
UncertaintyCheck robertson_check(const Observable& a, const Observable& b,
                                 const DensityState& rho, double slack = 1e-12);

/// Delta X Delta Y >= |Tr[[X, Y] rho]| / 2 with X, Y the first moments.
UncertaintyCheck holevo_check(const Pom& x, const Pom& y, const DensityState& rho,
                              double slack = 1e-12);

/// True when x and a are the same measure: identical labels after dropping
/// zero effects, effects within \p tol.
bool pom_equals_observable(const Pom& x, const Observable& a, double tol = 1e-9);

/// Pure states e_i, (e_i + e_j)/sqrt2 and (e_i + i e_j)/sqrt2. Their span is
/// all operators, so a linear identity holding on them holds for all states.
std::vector<DensityState> spanning_states(int dim);

/// Whether precision(x, a, rho)^2 <= tol for every state of spanning_states.
bool precision_vanishes_everywhere(const Pom& x, const Observable& a, double tol = 1e-9);

}  // namespace qmeter

#endif  // QMETER_METRICS_HPP_
