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
#ifndef QMETER_DILATION_HPP_
#define QMETER_DILATION_HPP_

#include <cstdint>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

/// Operations of a multi-meter scheme, one Kraus set per outcome tuple.
struct JointInstrument {
  std::vector<std::vector<double>> labels;
  std::vector<std::vector<Op>> kraus_sets;
};

/// Kraus form of X(D) rho = Tr_K[(1 (x) M(D)) U (rho (x) sigma) U^dagger].
/// Kraus operators are sqrt(lambda_l) <m|U|phi_l> for the eigenpairs of
/// sigma and an orthonormal basis {m} of each meter projector. Requires a
/// single meter; see scheme_to_joint_instrument for meter tuples.
Instrument scheme_to_instrument(const MeasurementScheme& s);

/// Product-outcome operations of a scheme with compatible meters.
JointInstrument scheme_to_joint_instrument(const MeasurementScheme& s);

/// Builds a scheme realizing \p t: probe dimension equal to the total Kraus
/// count (at least 2), probe state |0>, a coupling that maps psi (x) e_0 to
/// sum_kj K_kj psi (x) e_kj, and a meter reading label x_k on e_kj.
MeasurementScheme realize_instrument(const Instrument& t, std::uint64_t seed = 0);

struct NaimarkDilation {
  Isometry isometry;  // H -> H (x) C^n
  Observable pvm;     // labels of the POM, projectors 1 (x) |e_k><e_k|
};

/// V psi = sum_k sqrt(E_k) psi (x) e_k, so that V^dagger P_k V = E_k.
NaimarkDilation naimark_dilate(const Pom& x);

/// Unitary on H (x) C^n mapping psi (x) e_0 to sum_i K_i psi (x) e_i for the
/// flattened Kraus list {K_i}, with n = max(2, count).
Op dilation_coupling(const std::vector<Op>& kraus, std::uint64_t seed);

/// Observable on C^n that is diagonal in the computational basis, with
/// |e_i><e_i| carrying label label_of_index[i].
Observable pointer_observable(const std::vector<double>& label_of_index);

}  // namespace qmeter

#endif  // QMETER_DILATION_HPP_
