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
#include "qmeter/search.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qmeter/errors.hpp"
#include "qmeter/random.hpp"

namespace qmeter {
namespace {

// Post-measurement channel for each outcome; the instrument is V_kj P_k.
using Channels = std::vector<std::vector<Op>>;

Instrument assemble(const Observable& a, const Channels& channels) {
  std::vector<std::vector<Op>> sets;
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::vector<Op> set;
    for (const Op& v : channels[k]) set.push_back(v * a.projectors()[k]);
    sets.push_back(std::move(set));
  }
  return Instrument::from_kraus(a.outcomes(), std::move(sets));
}

Channels measure_prepare_channels(random::Engine& rng, const Observable& a, bool shared) {
  const int d = a.dim();
  Channels out;
  Ket psi = random::ket(rng, d);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!shared && k > 0) psi = random::ket(rng, d);
    std::vector<Op> set;
    for (int m = 0; m < d; ++m) set.push_back(psi * Op::Identity(d, d).row(m));
    out.push_back(std::move(set));
  }
  return out;
}

// Adds Gaussian noise and restores sum_j V^dagger V = 1 with the polar factor.
Channels perturb(random::Engine& rng, const Channels& base, double step) {
  Channels out;
  for (const auto& set : base) {
    std::vector<Op> next;
    Op total = Op::Zero(set.front().rows(), set.front().cols());
    for (const Op& v : set) {
      next.push_back(v + step * random::gaussian_matrix(rng, static_cast<int>(v.rows()),
                                                        static_cast<int>(v.cols())));
      total += next.back().adjoint() * next.back();
    }
    Eigen::SelfAdjointEigenSolver<Op> solver(0.5 * (total + total.adjoint()));
    const Eigen::VectorXd inv = solver.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const Op w = solver.eigenvectors() * inv.cast<Complex>().asDiagonal() *
                 solver.eigenvectors().adjoint();
    for (Op& v : next) v = v * w;
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

SearchResult sql_violation_search(int dim, const Observable& a, const Hamiltonian& h, double tau,
                                  const SearchOptions& options) {
  if (a.dim() != dim || h.dim() != dim) throw DimensionError("sql_violation_search: dimensions differ");
  if (options.budget < 1) throw InvalidArgument("sql_violation_search: budget must be positive");
  if (options.kraus_per_outcome < 1) throw InvalidArgument("sql_violation_search: kraus_per_outcome");
  const DensityState rho = options.rho ? *options.rho : DensityState::maximally_mixed(dim);
  if (rho.dim() != dim) throw DimensionError("sql_violation_search: state dimension");

  random::Engine rng(options.seed);
  SearchResult result;
  Channels incumbent;
  double best_score = -std::numeric_limits<double>::infinity();
  constexpr double kStepScales[] = {1.0, 0.3, 0.1};

  for (int i = 0; i < options.budget; ++i) {
    Channels candidate;
    if (i % 3 == 0 || incumbent.empty()) {
      if (i % 6 == 3) {
        candidate.clear();
        for (std::size_t k = 0; k < a.size(); ++k) {
          candidate.push_back(random::channel(rng, dim, options.kraus_per_outcome));
        }
      } else {
        candidate = measure_prepare_channels(rng, a, (i / 3) % 2 == 0);
      }
    } else {
      candidate = perturb(rng, incumbent, options.step * kStepScales[i % 3]);
    }
    const Instrument t = assemble(a, candidate);
    const SqlReport report = sql_report(t, a, h, tau, rho);
    ++result.evaluated;
    if (report.rhs < options.min_rhs) continue;
    ++result.admissible;
    const double score = options.objective == SearchObjective::kRatio
                             ? -report.delta_sq / report.rhs
                             : report.rhs - report.delta_sq;
    if (score > best_score) {
      best_score = score;
      incumbent = candidate;
      result.best = t;
      result.report = report;
      result.best_index = i;
    }
  }

  if (!result.report) {
    result.message = "no violation possible: rhs below " + std::to_string(options.min_rhs) +
                     " for every candidate";
    return result;
  }
  result.ratio = result.report->delta_sq / result.report->rhs;
  result.margin = result.report->rhs - result.report->delta_sq;
  result.found = !result.report->sql_holds;
  result.message = result.found ? "violation found" : "no violating candidate found";
  return result;
}

}  // namespace qmeter
