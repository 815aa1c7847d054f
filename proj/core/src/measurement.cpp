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
#include "qmeter/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmeter/errors.hpp"

namespace qmeter {
namespace {

void require_dim(int expected, int actual, const char* what) {
  if (expected != actual) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(actual) +
                         " does not match " + std::to_string(expected));
  }
}

void require_common_dim(std::span<const Instrument> ts, int dim, const char* what) {
  if (ts.empty()) throw InvalidArgument(std::string(what) + ": no instruments given");
  for (const Instrument& t : ts) require_dim(dim, t.dim(), what);
}

// Depth-first enumeration of outcome tuples; \p before(i, rho) runs ahead of
// instrument i.
template <typename Before>
void enumerate(std::span<const Instrument> ts, std::size_t depth, const Op& rho,
               std::vector<double>& tuple, JointDistribution& out, Before& before) {
  if (depth == ts.size()) {
    out.labels.push_back(tuple);
    out.probs.push_back(std::max(0.0, rho.trace().real()));
    return;
  }
  const Op evolved = before(depth, rho);
  const Instrument& t = ts[depth];
  for (std::size_t k = 0; k < t.size(); ++k) {
    tuple.push_back(t.outcomes()[k]);
    enumerate(ts, depth + 1, t.apply(k, evolved), tuple, out, before);
    tuple.pop_back();
  }
}

}  // namespace

DensityState normalize_state(const Op& positive) {
  const Op herm = 0.5 * (positive + positive.adjoint());
  Eigen::SelfAdjointEigenSolver<Op> solver(herm);
  Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
  const double total = values.sum();
  if (!(total > 0.0)) throw InvalidArgument("normalize_state: operator has no positive part");
  values /= total;
  const Op& v = solver.eigenvectors();
  Op rho = v * values.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityState::from_matrix(std::move(rho));
}

Distribution born_distribution(const Pom& x, const DensityState& rho) {
  require_dim(x.dim(), rho.dim(), "born_distribution");
  Distribution d;
  d.labels = x.outcomes();
  d.probs.reserve(x.size());
  for (const Op& e : x.effects()) d.probs.push_back(std::max(0.0, trace_product(e, rho.matrix()).real()));
  return d;
}

Op apply_operation(const Instrument& t, std::span<const double> subset, const Op& rho) {
  require_dim(t.dim(), static_cast<int>(rho.rows()), "apply_operation");
  std::vector<std::size_t> indices;
  for (double label : subset) {
    const auto k = t.index_of(label);
    if (!k) throw InvalidArgument("apply_operation: unknown outcome label " + std::to_string(label));
    if (std::find(indices.begin(), indices.end(), *k) == indices.end()) indices.push_back(*k);
  }
  Op out = Op::Zero(rho.rows(), rho.cols());
  for (std::size_t k : indices) out += t.apply(k, rho);
  return out;
}

Op apply_total(const Instrument& t, const Op& rho) {
  return apply_operation(t, t.outcomes(), rho);
}

Pom associated_pom(const Instrument& t) {
  std::vector<Op> effects;
  effects.reserve(t.size());
  for (const auto& set : t.kraus_sets()) {
    Op e = Op::Zero(t.dim(), t.dim());
    for (const Op& k : set) e += k.adjoint() * k;
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Pom::from_effects(t.outcomes(), std::move(effects));
}

PosteriorFamily posterior_family(const Instrument& t, const DensityState& rho, double p_floor) {
  const Distribution d = born_distribution(associated_pom(t), rho);
  PosteriorFamily family;
  family.entries.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    PosteriorEntry entry{t.outcomes()[k], d.probs[k], std::nullopt};
    if (d.probs[k] > p_floor) entry.posterior = normalize_state(t.apply(k, rho.matrix()));
    family.entries.push_back(std::move(entry));
  }
  return family;
}

JointDistribution sequential_distribution(std::span<const Instrument> ts, const DensityState& rho) {
  require_common_dim(ts, rho.dim(), "sequential_distribution");
  JointDistribution out;
  std::vector<double> tuple;
  auto identity_step = [](std::size_t, const Op& r) { return r; };
  enumerate(ts, 0, rho.matrix(), tuple, out, identity_step);
  return out;
}

JointDistribution timed_sequential_distribution(std::span<const Instrument> ts,
                                                std::span<const double> times,
                                                const Hamiltonian& h, const DensityState& rho) {
  require_common_dim(ts, rho.dim(), "timed_sequential_distribution");
  require_dim(rho.dim(), h.dim(), "timed_sequential_distribution");
  if (times.size() != ts.size()) {
    throw InvalidArgument("timed_sequential_distribution: need one time per instrument");
  }
  std::vector<Op> propagators;
  double previous = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < previous) {
      throw InvalidArgument("timed_sequential_distribution: times must be non-negative and non-decreasing");
    }
    propagators.push_back(h.propagator(t - previous));
    previous = t;
  }
  JointDistribution out;
  std::vector<double> tuple;
  auto step = [&propagators](std::size_t i, const Op& r) -> Op {
    return propagators[i] * r * propagators[i].adjoint();
  };
  enumerate(ts, 0, rho.matrix(), tuple, out, step);
  return out;
}

Op evolve(const Op& rho, const Hamiltonian& h, double t) {
  require_dim(h.dim(), static_cast<int>(rho.rows()), "evolve");
  if (t == 0.0) return rho;
  const Op u = h.propagator(t);
  return u * rho * u.adjoint();
}

DensityState evolve(const DensityState& rho, const Hamiltonian& h, double t) {
  if (t == 0.0) {
    require_dim(h.dim(), rho.dim(), "evolve");
    return rho;
  }
  return normalize_state(evolve(rho.matrix(), h, t));
}

Op choi_matrix(const Instrument& t, std::size_t k) {
  const int d = t.dim();
  Op c = Op::Zero(d * d, d * d);
  for (const Op& kr : t.kraus_sets().at(k)) {
    // w = sum_i e_i (x) K e_i, so that w w^dagger = sum_ij |i><j| (x) K|i><j|K^dagger.
    Ket w(d * d);
    for (int i = 0; i < d; ++i) w.segment(i * d, d) = kr.col(i);
    c += w * w.adjoint();
  }
  return c;
}

double choi_distance(const Instrument& a, const Instrument& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto j = b.index_of(a.outcomes()[k]);
    if (!j) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, operator_norm(choi_matrix(a, k) - choi_matrix(b, *j)));
  }
  return worst;
}

}  // namespace qmeter
