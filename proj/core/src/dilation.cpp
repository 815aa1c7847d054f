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
#include "qmeter/dilation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qmeter/errors.hpp"

namespace qmeter {
namespace {

// Orthonormal basis of the range of a (numerically) projective operator.
std::vector<Ket> range_basis(const Op& p) {
  std::vector<Ket> basis;
  if (operator_norm(p) <= kRankTruncation) return basis;
  Eigen::SelfAdjointEigenSolver<Op> solver(0.5 * (p + p.adjoint()));
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > 0.5) basis.push_back(solver.eigenvectors().col(i));
  }
  return basis;
}

}  // namespace

Observable pointer_observable(const std::vector<double>& label_of_index) {
  const int n = static_cast<int>(label_of_index.size());
  std::vector<double> labels = label_of_index;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<Op> projectors(labels.size(), Op::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), label_of_index[i]);
    projectors[static_cast<std::size_t>(it - labels.begin())](i, i) = 1.0;
  }
  return Observable::from_projectors(std::move(labels), std::move(projectors));
}

JointInstrument scheme_to_joint_instrument(const MeasurementScheme& s) {
  const int d = s.system_dim();
  const int kdim = s.probe_dim();
  const Op& u = s.coupling();

  // sigma = sum_l lambda_l |phi_l><phi_l|, keeping lambda_l > 1e-12.
  const Eigensystem sigma = hermitian_eigen(s.probe_state().matrix());
  std::vector<Op> coupled;  // sqrt(lambda_l) U (1 (x) |phi_l>), a (d*kdim) x d block
  for (Eigen::Index l = 0; l < sigma.values.size(); ++l) {
    if (sigma.values(l) <= kRankTruncation) continue;
    const Op phi = sigma.vectors.col(l);
    coupled.push_back(std::sqrt(sigma.values(l)) * (u * tensor_product(identity(d), phi)));
  }

  JointInstrument out;
  const auto& meters = s.meters();
  std::vector<std::size_t> index(meters.size(), 0);
  while (true) {
    std::vector<double> tuple;
    Op proj = identity(kdim);
    for (std::size_t i = 0; i < meters.size(); ++i) {
      tuple.push_back(meters[i].outcomes()[index[i]]);
      proj = proj * meters[i].projectors()[index[i]];
    }
    std::vector<Op> kraus;
    for (const Ket& m : range_basis(proj)) {
      const Op bra = tensor_product(identity(d), Op(m.adjoint()));
      for (const Op& w : coupled) kraus.push_back(bra * w);
    }
    if (kraus.empty()) kraus.push_back(Op::Zero(d, d));
    out.labels.push_back(std::move(tuple));
    out.kraus_sets.push_back(std::move(kraus));

    std::size_t pos = meters.size();
    while (pos > 0) {
      --pos;
      if (++index[pos] < meters[pos].size()) break;
      index[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

Instrument scheme_to_instrument(const MeasurementScheme& s) {
  if (s.meters().size() != 1) {
    throw InvalidArgument("scheme_to_instrument: scheme has " + std::to_string(s.meters().size()) +
                          " meters; use scheme_to_joint_instrument");
  }
  JointInstrument joint = scheme_to_joint_instrument(s);
  std::vector<double> labels;
  for (const auto& tuple : joint.labels) labels.push_back(tuple.front());
  return Instrument::from_kraus(std::move(labels), std::move(joint.kraus_sets));
}

Op dilation_coupling(const std::vector<Op>& kraus, std::uint64_t seed) {
  if (kraus.empty()) throw InvalidArgument("dilation_coupling: no Kraus operators");
  const int d = static_cast<int>(kraus.front().rows());
  const int count = static_cast<int>(kraus.size());
  const int n = std::max(2, count);
  Op w = Op::Zero(d * n, d);
  for (int j = 0; j < count; ++j) {
    for (int a = 0; a < d; ++a) w.row(a * n + j) = kraus[j].row(a);
  }
  const Op completed = complete_isometry(Isometry::from_matrix(std::move(w)), seed);

  // Column i of the isometry is the image of e_i (x) e_0; the rest fill the
  // remaining product-basis columns in order.
  Op u(d * n, d * n);
  int next = d;
  for (int i = 0; i < d; ++i) {
    u.col(i * n) = completed.col(i);
    for (int j = 1; j < n; ++j) u.col(i * n + j) = completed.col(next++);
  }
  return u;
}

MeasurementScheme realize_instrument(const Instrument& t, std::uint64_t seed) {
  std::vector<Op> kraus;
  std::vector<double> label_of_index;
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (const Op& kr : t.kraus_sets()[k]) {
      kraus.push_back(kr);
      label_of_index.push_back(t.outcomes()[k]);
    }
  }
  const int n = std::max<int>(2, static_cast<int>(kraus.size()));
  // Padding index never receives amplitude; it joins the first outcome.
  while (static_cast<int>(label_of_index.size()) < n) label_of_index.push_back(label_of_index.front());

  Op coupling = dilation_coupling(kraus, seed);
  return MeasurementScheme::create(DensityState::basis(n, 0), std::move(coupling),
                                   {pointer_observable(label_of_index)});
}

NaimarkDilation naimark_dilate(const Pom& x) {
  const int d = x.dim();
  const int n = static_cast<int>(x.size());
  Op v = Op::Zero(d * n, d);
  for (int k = 0; k < n; ++k) {
    const Op root = psd_sqrt(x.effects()[k]);
    for (int a = 0; a < d; ++a) v.row(a * n + k) = root.row(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return x.outcomes()[i] < x.outcomes()[j]; });
  std::vector<double> labels;
  std::vector<Op> projectors;
  for (int k : order) {
    Op e = Op::Zero(n, n);
    e(k, k) = 1.0;
    labels.push_back(x.outcomes()[k]);
    projectors.push_back(tensor_product(identity(d), e));
  }
  return {Isometry::from_matrix(std::move(v)),
          Observable::from_projectors(std::move(labels), std::move(projectors))};
}

}  // namespace qmeter
