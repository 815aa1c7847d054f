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
#ifndef QMETER_RANDOM_HPP_
#define QMETER_RANDOM_HPP_

#include <random>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter::random {

using Engine = std::mt19937_64;

Op gaussian_matrix(Engine& rng, int rows, int cols);
Op hermitian(Engine& rng, int dim);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Op unitary(Engine& rng, int dim);
Ket ket(Engine& rng, int dim);
/// Random state of random rank in [1, dim].
DensityState state(Engine& rng, int dim);
DensityState pure_state(Engine& rng, int dim);

/// Random sharp observable. With \p degenerate, eigenvalues are drawn from a
/// small integer set so repeated eigenvalues are common.
Observable observable(Engine& rng, int dim, bool degenerate = false);

/// Distinct sorted labels drawn from a normal distribution.
std::vector<double> labels(Engine& rng, int count);

Pom pom(Engine& rng, int dim, int outcomes);
/// Kraus operators of a random channel on C^dim.
std::vector<Op> channel(Engine& rng, int dim, int count);
Instrument instrument(Engine& rng, int dim, int outcomes, int max_kraus);

/// A POM whose effects are diagonal in a random eigenbasis of a, with
/// sum x_k E_k = A exactly.
Pom unbiased_compatible_pom(Engine& rng, const Observable& a, int outcomes);

/// Instrument K_kj = V_kj sqrt(E_k) on top of unbiased_compatible_pom, with
/// V a random channel, the identity, or a measure-and-prepare channel.
Instrument unbiased_compatible_instrument(Engine& rng, const Observable& a, int outcomes);

/// Random grid measure on labels xs x ys. With \p diagonal, mass is put
/// only on cells with x == y.
JointDistribution grid_measure(Engine& rng, const std::vector<double>& xs,
                               const std::vector<double>& ys, bool diagonal);

}  // namespace qmeter::random

#endif  // QMETER_RANDOM_HPP_
