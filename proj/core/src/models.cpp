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
#include "qmeter/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"

namespace qmeter {

namespace pauli {
Op x() {
  Op m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Op y() {
  Op m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Op z() {
  Op m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Ket equatorial_ket(double delta) {
  Ket psi(2);
  psi << 1.0 / std::sqrt(2.0), std::exp(Complex(0.0, delta)) / std::sqrt(2.0);
  return psi;
}

Hamiltonian rotation_z_to_x(double tau, double hbar) {
  if (!(tau > 0.0)) throw InvalidArgument("rotation_z_to_x: tau must be positive");
  return Hamiltonian::from_matrix(-(std::numbers::pi / (4.0 * tau)) * hbar * pauli::y(), hbar);
}

std::string_view to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::kLuders: return "luders";
    case ModelFamily::kUnsharp: return "unsharp";
    case ModelFamily::kMeasurePrepare: return "measure_prepare";
    case ModelFamily::kVonNeumann: return "von_neumann";
  }
  return "unknown";
}

std::optional<ModelFamily> parse_model_family(std::string_view name) {
  for (ModelFamily f : {ModelFamily::kLuders, ModelFamily::kUnsharp, ModelFamily::kMeasurePrepare,
                        ModelFamily::kVonNeumann}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string describe_model(ModelFamily f) {
  switch (f) {
    case ModelFamily::kLuders:
      return "luders: projective instrument of A = sum_k a_k P_k.\n"
             "  outcomes  a_k\n"
             "  Kraus     K_k = P_k\n"
             "  POM       E_k = P_k (unbiased, A-compatible, repeatable)\n";
    case ModelFamily::kUnsharp:
      return "unsharp: noisy version of A with sharpness eta in (0, 1].\n"
             "  effects   E_k = eta P_k + (1 - eta)/n 1\n"
             "  Kraus     K_k = sqrt(E_k)\n"
             "  outcomes  (a_k - (1 - eta) mean(a)) / eta when unbiased, else a_k\n"
             "  sigma_z, eta: E_+- = (1 +- eta sigma_z)/2, outcomes +-1/eta\n";
    case ModelFamily::kMeasurePrepare:
      return "measure_prepare: measure A, then prepare a fixed state psi0.\n"
             "  outcomes  a_k\n"
             "  Kraus     K_km = |psi0><e_km| for an orthonormal basis {e_km} of P_k\n"
             "  POM       E_k = P_k; every posterior state is |psi0><psi0|\n";
    case ModelFamily::kVonNeumann:
      return "von_neumann: pointer coupling to a probe C^n prepared in |0>.\n"
             "  coupling  U = sum_l P_l (x) S^(g l), S|j> = |j+1 mod n>\n"
             "  meter     sum_l a_l |l><l| on the probe\n"
             "  strength  g in [0, 1]; g = 1 reproduces luders(A)\n";
  }
  return {};
}

Instrument luders(const Observable& a) {
  std::vector<std::vector<Op>> kraus;
  for (const Op& p : a.projectors()) kraus.push_back({p});
  return Instrument::from_kraus(a.outcomes(), std::move(kraus));
}

Instrument unsharp(const Observable& a, double eta, bool unbiased) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("unsharp: eta must lie in (0, 1]");
  const double n = static_cast<double>(a.size());
  double mean = 0.0;
  for (double v : a.outcomes()) mean += v / n;
  std::vector<double> labels;
  std::vector<std::vector<Op>> kraus;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Op effect = eta * a.projectors()[k] + ((1.0 - eta) / n) * identity(a.dim());
    labels.push_back(unbiased ? (a.outcomes()[k] - (1.0 - eta) * mean) / eta : a.outcomes()[k]);
    kraus.push_back({psd_sqrt(effect)});
  }
  return Instrument::from_kraus(std::move(labels), std::move(kraus));
}

Instrument measure_prepare(const Observable& a, const Ket& psi0) {
  if (psi0.size() != a.dim()) throw DimensionError("measure_prepare: psi0 dimension");
  if (std::abs(psi0.norm() - 1.0) > kEqualityTol) {
    throw InvalidArgument("measure_prepare: psi0 must be normalized");
  }
  std::vector<std::vector<Op>> kraus;
  for (const Op& p : a.projectors()) {
    const Eigensystem es = hermitian_eigen(p);
    std::vector<Op> set;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (es.values(i) > 0.5) set.push_back(psi0 * es.vectors.col(i).adjoint());
    }
    if (set.empty()) set.push_back(Op::Zero(a.dim(), a.dim()));
    kraus.push_back(std::move(set));
  }
  return Instrument::from_kraus(a.outcomes(), std::move(kraus));
}

MeasurementScheme von_neumann_scheme(const Observable& a, double strength) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw InvalidArgument("von_neumann_scheme: strength must lie in [0, 1]");
  }
  const int n = static_cast<int>(a.size());
  const int d = a.dim();
  // Fourier eigenbasis of the cyclic shift: S f_k = exp(2 pi i k / n) f_k.
  Op fourier(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      fourier(j, k) = std::exp(Complex(0.0, -2.0 * std::numbers::pi * j * k / n)) / std::sqrt(n);
    }
  }
  Op coupling = Op::Zero(d * n, d * n);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXcd phases(n);
    for (int k = 0; k < n; ++k) {
      phases(k) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * k * strength * l / n));
    }
    const Op shift_power = fourier * phases.asDiagonal() * fourier.adjoint();
    coupling += tensor_product(a.projectors()[l], shift_power);
  }
  return MeasurementScheme::create(DensityState::basis(n, 0), std::move(coupling),
                                   {pointer_observable(a.outcomes())});
}

Instrument build_model(const ModelSpec& spec) {
  switch (spec.family) {
    case ModelFamily::kLuders:
      return luders(spec.observable);
    case ModelFamily::kUnsharp:
      return unsharp(spec.observable, spec.eta, spec.unbiased);
    case ModelFamily::kMeasurePrepare:
      if (!spec.psi0) throw InvalidArgument("build_model: measure_prepare needs psi0");
      return measure_prepare(spec.observable, *spec.psi0);
    case ModelFamily::kVonNeumann:
      return scheme_to_instrument(von_neumann_scheme(spec.observable, spec.strength));
  }
  throw InvalidArgument("build_model: unknown family");
}

}  // namespace qmeter
