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
#include "qmeter/operator.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qmeter/errors.hpp"
#include "qmeter/types.hpp"

namespace qmeter {

Op identity(int dim) { return Op::Identity(dim, dim); }

Op projector(const Ket& psi) { return psi * psi.adjoint(); }

Op commutator(const Op& a, const Op& b) { return a * b - b * a; }

double operator_norm(const Op& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Op> svd(a);
  return svd.singularValues()(0);
}

bool is_hermitian(const Op& a, double tol) {
  return a.rows() == a.cols() && operator_norm(a - a.adjoint()) <= tol;
}

Complex trace_product(const Op& a, const Op& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: incompatible shapes");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

Eigensystem hermitian_eigen(const Op& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eigen: operator is not square");
  if (!is_hermitian(h, tol)) throw InvalidArgument("hermitian_eigen: operator is not Hermitian");
  const Op sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Op> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Op unitary_exponential(const Op& h, double t) {
  const Eigensystem es = hermitian_eigen(h);
  Eigen::VectorXcd phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * es.values(i)));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Op tensor_product(const Op& a, const Op& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Op out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor_product(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Op partial_trace(const Op& x, int dim_first, int dim_second, Factor keep) {
  if (dim_first < 1 || dim_second < 1 || x.rows() != x.cols() ||
      x.rows() != static_cast<Eigen::Index>(dim_first) * dim_second) {
    throw DimensionError("partial_trace: operator dimension " + std::to_string(x.rows()) +
                         " does not factor as " + std::to_string(dim_first) + " x " +
                         std::to_string(dim_second));
  }
  if (keep == Factor::kFirst) {
    Op out = Op::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i) {
      for (int j = 0; j < dim_first; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < dim_second; ++k) s += x(i * dim_second + k, j * dim_second + k);
        out(i, j) = s;
      }
    }
    return out;
  }
  Op out = Op::Zero(dim_second, dim_second);
  for (int i = 0; i < dim_first; ++i) {
    out += x.block(i * dim_second, i * dim_second, dim_second, dim_second);
  }
  return out;
}

Op psd_sqrt(const Op& p, double tol) {
  const Eigensystem es = hermitian_eigen(p, tol);
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < -tol) {
      throw InvalidArgument("psd_sqrt: eigenvalue " + std::to_string(v) + " is negative");
    }
    roots(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

Isometry Isometry::from_matrix(Op v, double tol) {
  if (v.cols() < 1 || v.rows() < v.cols()) {
    throw DimensionError("Isometry: output dimension must be at least the input dimension");
  }
  if (operator_norm(v.adjoint() * v - identity(static_cast<int>(v.cols()))) > tol) {
    throw InvalidArgument("Isometry: V^dagger V differs from the identity");
  }
  return Isometry(std::move(v));
}

Op complete_isometry(const Isometry& v, std::uint64_t seed) {
  const int n = v.out_dim();
  const int m = v.in_dim();
  Op u = Op::Zero(n, n);
  u.leftCols(m) = v.matrix();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  int filled = m;
  while (filled < n) {
    Ket candidate(n);
    for (int i = 0; i < n; ++i) candidate(i) = Complex(normal(rng), normal(rng));
    const double initial = candidate.norm();
    // Two Gram-Schmidt sweeps keep the completion orthonormal to roundoff.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int c = 0; c < filled; ++c) candidate -= u.col(c).dot(candidate) * u.col(c);
    }
    const double remaining = candidate.norm();
    if (remaining < 1e-6 * initial) continue;
    u.col(filled++) = candidate / remaining;
  }
  return u;
}

Observable spectral_pvm(const Op& h, double cluster_tol) {
  const Eigensystem es = hermitian_eigen(h);
  const int dim = static_cast<int>(es.values.size());
  std::vector<double> labels;
  std::vector<Op> projectors;
  int start = 0;
  while (start < dim) {
    int end = start + 1;
    while (end < dim && es.values(end) - es.values(end - 1) <= cluster_tol) ++end;
    double sum = 0.0;
    Op p = Op::Zero(dim, dim);
    for (int i = start; i < end; ++i) {
      sum += es.values(i);
      p += es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
    labels.push_back(sum / (end - start));
    projectors.push_back(std::move(p));
    start = end;
  }
  return Observable::from_projectors(std::move(labels), std::move(projectors));
}

Complex commutator_trace(const Op& x, const Op& y, const DensityState& rho) {
  if (x.rows() != rho.dim() || y.rows() != rho.dim() || x.cols() != rho.dim() ||
      y.cols() != rho.dim()) {
    throw DimensionError("commutator_trace: operator and state dimensions differ");
  }
  const Op xs = x * rho.sqrt();
  const Op ys = y * rho.sqrt();
  return trace_product(xs.adjoint(), ys) - trace_product(ys.adjoint(), xs);
}

}  // namespace qmeter
