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
#ifndef QMETER_REPEATED_HPP_
#define QMETER_REPEATED_HPP_

#include <optional>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

/// A(tau) = U_tau^dagger A U_tau.
Op heisenberg(const Op& a, const Hamiltonian& h, double tau);

/// Root-mean-square scatter between the recorded outcome and an ideal
/// measurement of a on the posterior state.
double resolution(const Instrument& t, const Observable& a, const DensityState& rho);

struct ResolutionDecomposition {
  double posterior_variance;  // sum_x p_x Var_A[rho_x]
  double prediction_bias;     // sum_x p_x (Tr[A rho_x] - x)^2
  double total() const { return posterior_variance + prediction_bias; }
};

ResolutionDecomposition resolution_decomposition(const Instrument& t, const Observable& a,
                                                 const DensityState& rho);

/// Mean-value predictor h(x) = Tr[rho_x A(tau)]; empty at null posteriors.
/// Indexed like t.outcomes().
std::vector<std::optional<double>> predictor(const Instrument& t, const Observable& a,
                                             const Hamiltonian& h, double tau,
                                             const DensityState& rho);

/// Squared uncertainty of predicting the second outcome from the first
/// outcome \p x. The second measurement is the associated POM of t applied
/// to the evolved posterior. Throws NullPosteriorError at null posteriors.
double conditional_uncertainty(const Instrument& t, const Observable& a, const Hamiltonian& h,
                               double tau, const DensityState& rho, double x);

/// Probability-weighted mean of conditional_uncertainty over outcomes with a
/// posterior (squared units).
double predictive_uncertainty(const Instrument& t, const Observable& a, const Hamiltonian& h,
                              double tau, const DensityState& rho);

struct SqlRow {
  double outcome;
  double probability;
  std::optional<double> prediction;   // h(x)
  std::optional<double> uncertainty;  // Delta[tau, rho, x]
};

struct SqlReport {
  double sigma;          // resolution of t in rho
  double epsilon_after;  // precision of the POM in alpha(tau) X(R) rho
  double delta_sq;       // predictive uncertainty squared
  double rhs;            // |Tr[[A(0), A(tau)] X(R) rho]|
  bool condition_holds;  // sigma <= epsilon_after + 1e-12
  bool sql_holds;        // delta_sq >= rhs - 1e-9
  double excluded_weight;
  bool excluded_flag;  // excluded_weight > 1e-9
  std::vector<SqlRow> rows;

  /// The only implication asserted: condition_holds => sql_holds.
  bool consistent() const { return !condition_holds || sql_holds; }
};

/// Requires the associated POM to be an unbiased a-compatible measurement
/// (BiasError / CompatibilityError otherwise).
SqlReport sql_report(const Instrument& t, const Observable& a, const Hamiltonian& h, double tau,
                     const DensityState& rho);

}  // namespace qmeter

#endif  // QMETER_REPEATED_HPP_
