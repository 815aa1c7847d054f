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
#ifndef QMETER_MEASUREMENT_HPP_
#define QMETER_MEASUREMENT_HPP_

#include <span>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

/// Density operator nearest to a positive operator: Hermitian part,
/// negative eigenvalues clamped, unit trace. Throws InvalidArgument when the
/// trace is not positive.
DensityState normalize_state(const Op& positive);

/// Outcome probabilities Tr[E_k rho], clamped at zero.
Distribution born_distribution(const Pom& x, const DensityState& rho);

/// Unnormalized reduced operator for the outcome subset \p subset. Throws
/// InvalidArgument for labels the instrument does not have.
Op apply_operation(const Instrument& t, std::span<const double> subset, const Op& rho);

/// The instrument's total operation (all outcomes).
Op apply_total(const Instrument& t, const Op& rho);

/// Effects E_k = sum_j K_kj^dagger K_kj.
Pom associated_pom(const Instrument& t);

PosteriorFamily posterior_family(const Instrument& t, const DensityState& rho,
                                 double p_floor = kProbabilityFloor);

/// Joint statistics of successive instruments applied left to right.
/// Tuples are enumerated lexicographically in outcome order.
JointDistribution sequential_distribution(std::span<const Instrument> ts,
                                          const DensityState& rho);

/// As sequential_distribution, with free evolution for times[0] before the
/// first instrument and for times[i] - times[i-1] between instruments.
/// Times must be non-negative and non-decreasing.
JointDistribution timed_sequential_distribution(std::span<const Instrument> ts,
                                                std::span<const double> times,
                                                const Hamiltonian& h,
                                                const DensityState& rho);

DensityState evolve(const DensityState& rho, const Hamiltonian& h, double t);
Op evolve(const Op& rho, const Hamiltonian& h, double t);

/// Choi matrix sum_ij |i><j| (x) Phi(|i><j|) of outcome \p k.
Op choi_matrix(const Instrument& t, std::size_t k);

/// Largest per-outcome operator-norm distance between Choi matrices, after
/// matching outcomes by label. Instruments with different label sets are
/// at infinite distance.
double choi_distance(const Instrument& a, const Instrument& b);

}  // namespace qmeter

#endif  // QMETER_MEASUREMENT_HPP_
