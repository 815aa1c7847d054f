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
#include "qmeter/random.hpp"

#include <algorithm>
#include <cmath>

#include "qmeter/errors.hpp"

namespace qmeter::random {
namespace {

double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Engine& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// S^(-1/2) for a positive definite S.
Op inverse_sqrt(const Op& s) {
  Eigen::SelfAdjointEigenSolver<Op> solver(0.5 * (s + s.adjoint()));
  const Eigen::VectorXd inv = solver.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * inv.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

// Orthonormal basis of the range of a projector, rotated by a random unitary.
std::vector<Ket> random_range_basis(Engine& rng, const Op& p) {
  const Eigensystem es = hermitian_eigen(p);
  std::vector<int> cols;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.5) cols.push_back(static_cast<int>(i));
  }
  const int r = static_cast<int>(cols.size());
  if (r == 0) return {};
  Op basis(p.rows(), r);
  for (int c = 0; c < r; ++c) basis.col(c) = es.vectors.col(cols[c]);
  const Op rotated = basis * unitary(rng, r);
  std::vector<Ket> out;
  for (int c = 0; c < r; ++c) out.push_back(rotated.col(c));
  return out;
}

}  // namespace

Op gaussian_matrix(Engine& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Op m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

Op hermitian(Engine& rng, int dim) {
  const Op g = gaussian_matrix(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

Op unitary(Engine& rng, int dim) {
  const Eigen::HouseholderQR<Op> qr(gaussian_matrix(rng, dim, dim));
  Op q = qr.householderQ() * Op::Identity(dim, dim);
  const Op r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

Ket ket(Engine& rng, int dim) {
  Ket v = gaussian_matrix(rng, dim, 1);
  return v / v.norm();
}

DensityState pure_state(Engine& rng, int dim) { return DensityState::pure(ket(rng, dim)); }

DensityState state(Engine& rng, int dim) {
  const int rank = uniform_int(rng, 1, dim);
  const Op g = gaussian_matrix(rng, dim, rank);
  Op rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityState::from_matrix(0.5 * (rho + rho.adjoint()));
}

Observable observable(Engine& rng, int dim, bool degenerate) {
  if (!degenerate) return spectral_pvm(hermitian(rng, dim));
  Eigen::VectorXd values(dim);
  for (int i = 0; i < dim; ++i) values(i) = uniform_int(rng, -2, 2);
  const Op u = unitary(rng, dim);
  const Op h = u * values.cast<Complex>().asDiagonal() * u.adjoint();
  return spectral_pvm(0.5 * (h + h.adjoint()));
}

std::vector<double> labels(Engine& rng, int count) {
  std::normal_distribution<double> normal(0.0, 1.5);
  while (true) {
    std::vector<double> out(count);
    for (double& v : out) v = normal(rng);
    std::sort(out.begin(), out.end());
    bool spaced = true;
    for (int i = 1; i < count; ++i) spaced = spaced && out[i] - out[i - 1] > 0.05;
    if (spaced) return out;
  }
}

Pom pom(Engine& rng, int dim, int outcomes) {
  std::vector<Op> grams;
  Op total = Op::Zero(dim, dim);
  for (int k = 0; k < outcomes; ++k) {
    // The first Gram matrix has full rank so that the total is invertible.
    const Op g = gaussian_matrix(rng, k == 0 ? dim : uniform_int(rng, 1, dim), dim);
    grams.push_back(g.adjoint() * g);
    total += grams.back();
  }
  const Op w = inverse_sqrt(total);
  std::vector<Op> effects;
  for (const Op& g : grams) {
    const Op e = w * g * w;
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Pom::from_effects(labels(rng, outcomes), std::move(effects));
}

std::vector<Op> channel(Engine& rng, int dim, int count) {
  std::vector<Op> ops;
  Op total = Op::Zero(dim, dim);
  for (int j = 0; j < count; ++j) {
    ops.push_back(gaussian_matrix(rng, dim, dim));
    total += ops.back().adjoint() * ops.back();
  }
  const Op w = inverse_sqrt(total);
  for (Op& k : ops) k = k * w;
  return ops;
}

Instrument instrument(Engine& rng, int dim, int outcomes, int max_kraus) {
  std::vector<std::vector<Op>> sets(outcomes);
  Op total = Op::Zero(dim, dim);
  for (auto& set : sets) {
    const int count = uniform_int(rng, 1, max_kraus);
    for (int j = 0; j < count; ++j) {
      set.push_back(gaussian_matrix(rng, dim, dim));
      total += set.back().adjoint() * set.back();
    }
  }
  const Op w = inverse_sqrt(total);
  for (auto& set : sets) {
    for (Op& k : set) k = k * w;
  }
  return Instrument::from_kraus(labels(rng, outcomes), std::move(sets));
}

Pom unbiased_compatible_pom(Engine& rng, const Observable& a, int outcomes) {
  if (outcomes < 2) throw InvalidArgument("unbiased_compatible_pom: need at least two outcomes");
  const double lo = a.outcomes().front() - uniform(rng, 0.1, 1.5);
  const double hi = a.outcomes().back() + uniform(rng, 0.1, 1.5);
  std::vector<double> xs{lo, hi};
  while (static_cast<int>(xs.size()) < outcomes) {
    const double v = uniform(rng, lo, hi);
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return std::abs(x - v) > 0.05; })) {
      xs.push_back(v);
    }
  }
  std::sort(xs.begin(), xs.end());

  const int dim = a.dim();
  std::vector<Op> effects(outcomes, Op::Zero(dim, dim));
  std::exponential_distribution<double> exponential;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double target = a.outcomes()[l];
    for (const Ket& q : random_range_basis(rng, a.projectors()[l])) {
      // Probability vector over xs with mean equal to the eigenvalue: mix a
      // random vector with the point mass at the far end.
      std::vector<double> w(outcomes);
      double sum = 0.0, mean = 0.0;
      for (double& v : w) sum += (v = exponential(rng));
      for (int k = 0; k < outcomes; ++k) mean += (w[k] /= sum) * xs[k];
      const int end = mean > target ? 0 : outcomes - 1;
      const double lambda = mean == xs[end] ? 1.0 : (target - xs[end]) / (mean - xs[end]);
      const Op pq = projector(q);
      for (int k = 0; k < outcomes; ++k) {
        const double c = lambda * w[k] + (k == end ? 1.0 - lambda : 0.0);
        effects[k] += c * pq;
      }
    }
  }
  for (Op& e : effects) e = 0.5 * (e + e.adjoint());
  return Pom::from_effects(std::move(xs), std::move(effects));
}

Instrument unbiased_compatible_instrument(Engine& rng, const Observable& a, int outcomes) {
  const Pom base = unbiased_compatible_pom(rng, a, outcomes);
  const int dim = a.dim();
  const int kind = uniform_int(rng, 0, 2);
  std::vector<std::vector<Op>> sets;
  for (const Op& e : base.effects()) {
    const Op root = psd_sqrt(e);
    std::vector<Op> post;
    if (kind == 0) {
      post.push_back(identity(dim));
    } else if (kind == 1) {
      post = channel(rng, dim, uniform_int(rng, 1, 2));
    } else {
      const Ket psi = ket(rng, dim);
      for (int m = 0; m < dim; ++m) post.push_back(psi * Op::Identity(dim, dim).row(m));
    }
    std::vector<Op> set;
    for (const Op& v : post) set.push_back(v * root);
    sets.push_back(std::move(set));
  }
  return Instrument::from_kraus(base.outcomes(), std::move(sets));
}

JointDistribution grid_measure(Engine& rng, const std::vector<double>& xs,
                               const std::vector<double>& ys, bool diagonal) {
  JointDistribution mu;
  double total = 0.0;
  for (double x : xs) {
    for (double y : ys) {
      const double w = (!diagonal || x == y) ? uniform(rng, 0.05, 1.0) : 0.0;
      mu.labels.push_back({x, y});
      mu.probs.push_back(w);
      total += w;
    }
  }
  if (!(total > 0.0)) throw InvalidArgument("grid_measure: axes share no label");
  for (double& p : mu.probs) p /= total;
  return mu;
}

}  // namespace qmeter::random
