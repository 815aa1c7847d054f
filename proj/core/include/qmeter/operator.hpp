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
#ifndef QMETER_OPERATOR_HPP_
#define QMETER_OPERATOR_HPP_

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "qmeter/tolerance.hpp"

namespace qmeter {

using Complex = std::complex<double>;
/// Dense square operator on a finite-dimensional Hilbert space.
using Op = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

class Observable;
class DensityState;

/// Which factor of H (x) K survives a partial trace.
enum class Factor { kFirst, kSecond };

Op identity(int dim);
Op projector(const Ket& psi);
Op commutator(const Op& a, const Op& b);

/// Largest singular value.
double operator_norm(const Op& a);
bool is_hermitian(const Op& a, double tol = kEqualityTol);

/// Tr[a b] without forming the product.
Complex trace_product(const Op& a, const Op& b);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Op vectors;              // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian operator. Throws InvalidArgument if
/// \p h is not Hermitian within \p tol.
Eigensystem hermitian_eigen(const Op& h, double tol = kEqualityTol);

/// exp(-i t h) for Hermitian h.
Op unitary_exponential(const Op& h, double t);

/// Kronecker product; basis index (i1, i2) maps to i1 * dim(b) + i2.
Op tensor_product(const Op& a, const Op& b);
Ket tensor_product(const Ket& a, const Ket& b);

/// Tr_K or Tr_H of an operator on H (x) K with dim(H) = dim_first and
/// dim(K) = dim_second.
Op partial_trace(const Op& x, int dim_first, int dim_second, Factor keep);

/// Positive square root of a Hermitian PSD operator. Eigenvalues in
/// [-tol, 0) are clamped to zero; anything more negative is rejected.
Op psd_sqrt(const Op& p, double tol = kEigenClampTol);

/// Linear map V: C^in_dim -> C^out_dim with V^dagger V = 1.
class Isometry {
 public:
  /// Validates V^dagger V = 1 within \p tol.
  static Isometry from_matrix(Op v, double tol = kEqualityTol);

  const Op& matrix() const { return v_; }
  int in_dim() const { return static_cast<int>(v_.cols()); }
  int out_dim() const { return static_cast<int>(v_.rows()); }

 private:
  explicit Isometry(Op v) : v_(std::move(v)) {}
  Op v_;
};

/// Extends \p v to a unitary on the output space whose first in_dim
/// columns are exactly the columns of v. The remaining columns come from
/// seeded Gaussian candidates orthonormalized by modified Gram-Schmidt, so
/// the result is a pure function of (v, seed).
Op complete_isometry(const Isometry& v, std::uint64_t seed);

/// Spectral measure of a Hermitian operator. Eigenvalues whose consecutive
/// gaps are within \p cluster_tol are merged into one outcome labelled by
/// the cluster mean.
Observable spectral_pvm(const Op& h, double cluster_tol = kClusterTol);

/// Tr[(x sqrt(rho))^dagger y sqrt(rho) - (y sqrt(rho))^dagger x sqrt(rho)].
/// Purely imaginary for Hermitian x and y.
Complex commutator_trace(const Op& x, const Op& y, const DensityState& rho);

}  // namespace qmeter

#endif  // QMETER_OPERATOR_HPP_
