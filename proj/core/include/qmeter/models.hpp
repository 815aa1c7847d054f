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
#ifndef QMETER_MODELS_HPP_
#define QMETER_MODELS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmeter/types.hpp"

namespace qmeter {

namespace pauli {
Op x();
Op y();
Op z();
}  // namespace pauli

/// Unit vector cos(delta)|0> ... with Bloch vector (cos delta, sin delta, 0).
Ket equatorial_ket(double delta);

/// Hamiltonian with U_tau^dagger sigma_z U_tau = sigma_x, i.e.
/// H = -(pi / (4 tau)) hbar sigma_y.
Hamiltonian rotation_z_to_x(double tau = 1.0, double hbar = 1.0);

enum class ModelFamily {
  kLuders,          // Kraus P_k
  kUnsharp,         // Kraus sqrt(eta P_k + (1 - eta)/n)
  kMeasurePrepare,  // Kraus |psi0><e_km|, {e_km} a basis of P_k
  kVonNeumann,      // scheme: controlled shift of a probe pointer
};

std::string_view to_string(ModelFamily f);
std::optional<ModelFamily> parse_model_family(std::string_view name);
/// Closed-form description of a family, for documentation output.
std::string describe_model(ModelFamily f);

struct ModelSpec {
  Observable observable;
  ModelFamily family = ModelFamily::kLuders;
  /// kUnsharp: sharpness in (0, 1].
  double eta = 1.0;
  /// kUnsharp: relabel outcomes so that sum x_k E_k = A.
  bool unbiased = true;
  /// kMeasurePrepare: normalized prepared state.
  std::optional<Ket> psi0;
  /// kVonNeumann: coupling strength in [0, 1]; 1 is a perfect pointer shift.
  double strength = 1.0;
};

/// Throws InvalidArgument for parameters outside their ranges.
Instrument build_model(const ModelSpec& spec);

Instrument luders(const Observable& a);
Instrument unsharp(const Observable& a, double eta, bool unbiased = true);
Instrument measure_prepare(const Observable& a, const Ket& psi0);
MeasurementScheme von_neumann_scheme(const Observable& a, double strength = 1.0);

}  // namespace qmeter

#endif  // QMETER_MODELS_HPP_
