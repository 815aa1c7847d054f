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
#include "qmeter/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/joint.hpp"
#include "qmeter/measurement.hpp"
#include "qmeter/metrics.hpp"
#include "qmeter/models.hpp"
#include "qmeter/random.hpp"
#include "qmeter/repeated.hpp"

namespace qmeter {
namespace {

using random::Engine;

int draw(Engine& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double draw_real(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
bool coin(Engine& rng) { return draw(rng, 0, 1) == 1; }

// Records |error| against a tolerance.
void record(SuiteResult& r, double error, double tol) {
  r.max_error = std::max(r.max_error, error);
  if (!(error <= tol)) ++r.violations;
}

SuiteResult robertson(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 8);
    const Observable a = random::observable(rng, d, coin(rng));
    const Observable b = random::observable(rng, d, coin(rng));
    const DensityState rho = random::state(rng, d);
    const UncertaintyCheck c = robertson_check(a, b, rho);
    record(r, std::max(0.0, c.rhs - c.lhs), 1e-12);
    ++r.trials;
  }
  return r;
}

SuiteResult holevo(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 4);
    const Pom x = random::pom(rng, d, draw(rng, 2, 4));
    const Pom y = random::pom(rng, d, draw(rng, 2, 4));
    const DensityState rho = random::state(rng, d);
    const UncertaintyCheck c = holevo_check(x, y, rho);
    record(r, std::max(0.0, c.rhs - c.lhs), 1e-12);
    ++r.trials;
  }
  return r;
}

// Variance-difference identity for unbiased POMs, the bias decomposition and its
// lower bound for relabelled (biased) ones, and POM-variance dominance.
SuiteResult precision_identity(int trials, Engine& rng) {
  SuiteResult r;
  double worst_decomposition = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 4);
    const Observable a = random::observable(rng, d, coin(rng));
    const DensityState rho = random::state(rng, d);
    const Pom x = random::unbiased_compatible_pom(rng, a, draw(rng, 2, 4));
    const double eps_sq = std::pow(precision(x, a, rho), 2);
    const double identity_gap =
        eps_sq - (spread(x, rho).variance - spread(Pom::from_observable(a), rho).variance);
    record(r, std::abs(identity_gap), 1e-9);

    const Pom biased = Pom::from_effects(random::labels(rng, static_cast<int>(x.size())), x.effects());
    const PrecisionDecomposition dec = precision_decomposition(biased, a, rho);
    const double biased_sq = std::pow(precision(biased, a, rho), 2);
    const double gap = std::abs(biased_sq - dec.squared_precision());
    worst_decomposition = std::max(worst_decomposition, gap);
    record(r, gap, 1e-9);
    record(r, std::max(0.0, dec.bias - biased_sq), 1e-12);
    record(r, std::max(0.0, dec.operator_variance - dec.pom_variance), 1e-12);
    ++r.trials;
  }
  r.extras["max_decomposition_error"] = worst_decomposition;
  return r;
}

// Zero precision on the spanning family exactly when x is a itself.
SuiteResult precision_zero(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 4);
    const Observable a = random::observable(rng, d, coin(rng));
    Pom x = Pom::from_observable(a);
    switch (draw(rng, 0, 3)) {
      case 0:
        break;
      case 1: {  // same measure with an extra never-occurring outcome
        std::vector<double> labels = a.outcomes();
        std::vector<Op> effects = a.projectors();
        labels.push_back(labels.back() + 1.0);
        effects.push_back(Op::Zero(d, d));
        x = Pom::from_effects(std::move(labels), std::move(effects));
        break;
      }
      case 2:
        x = associated_pom(unsharp(a, draw_real(rng, 0.2, 0.95), coin(rng)));
        break;
      default:
        if (a.size() >= 2) x = random::unbiased_compatible_pom(rng, a, draw(rng, 2, 4));
        break;
    }
    const bool vanishes = precision_vanishes_everywhere(x, a);
    const bool equal = pom_equals_observable(x, a);
    if (vanishes != equal) ++r.violations;
    r.extras["equal_cases"] += equal ? 1.0 : 0.0;
    ++r.trials;
  }
  return r;
}

SuiteResult diagonal_support(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const std::vector<double> axis = random::labels(rng, draw(rng, 2, 4));
    const bool diagonal = i % 2 == 0;
    std::vector<double> ys = axis;
    if (!diagonal && coin(rng)) ys = random::labels(rng, draw(rng, 2, 4));
    const DiagonalSupport s = diagonal_support_test(random::grid_measure(rng, axis, ys, diagonal));
    if (!s.agree() || s.by_moment != diagonal) ++r.violations;
    ++r.trials;
  }
  return r;
}

SuiteResult naimark(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 3);
    const Pom x = random::pom(rng, d, draw(rng, 1, 4) == 1 ? 2 : draw(rng, 2, 4));
    const NaimarkDilation nd = naimark_dilate(x);
    const Op& v = nd.isometry.matrix();
    double err = operator_norm(v.adjoint() * v - identity(d));
    for (std::size_t k = 0; k < x.size(); ++k) {
      // Observable projectors are sorted by label; match them back by label.
      const auto it = std::find(nd.pvm.outcomes().begin(), nd.pvm.outcomes().end(), x.outcomes()[k]);
      const Op& p = nd.pvm.projectors()[static_cast<std::size_t>(it - nd.pvm.outcomes().begin())];
      err = std::max(err, operator_norm(v.adjoint() * p * v - x.effects()[k]));
    }
    record(r, err, 1e-10);
    ++r.trials;
  }
  return r;
}

SuiteResult realize(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const Instrument t = random::instrument(rng, draw(rng, 2, 4), draw(rng, 1, 3), 2);
    const Instrument back = scheme_to_instrument(realize_instrument(t, static_cast<std::uint64_t>(i)));
    record(r, choi_distance(t, back), 1e-9);
    ++r.trials;
  }
  return r;
}

// Mixing identity and resolution decomposition, over both random
// instruments and unbiased compatible ones.
SuiteResult posterior(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 4);
    const Observable a = random::observable(rng, d, coin(rng));
    const Instrument t = coin(rng) ? random::instrument(rng, d, draw(rng, 1, 3), 2)
                                   : random::unbiased_compatible_instrument(rng, a, draw(rng, 2, 4));
    const DensityState rho = random::state(rng, d);
    const PosteriorFamily family = posterior_family(t, rho);
    Op mixed = Op::Zero(d, d);
    for (const PosteriorEntry& e : family.entries) {
      if (e.posterior) mixed += e.probability * e.posterior->matrix();
    }
    record(r, operator_norm(mixed - apply_total(t, rho.matrix())), 1e-9);
    const ResolutionDecomposition dec = resolution_decomposition(t, a, rho);
    record(r, std::abs(dec.total() - std::pow(resolution(t, a, rho), 2)), 1e-9);
    record(r, std::max(0.0, -std::min(dec.posterior_variance, dec.prediction_bias)), 1e-12);
    ++r.trials;
  }
  return r;
}

// Both joint inequalities on pure states plus the noise-operator identities;
// mixed states are evaluated and counted without being asserted.
SuiteResult joint(int trials, Engine& rng) {
  SuiteResult r;
  int mixed_failures = 0;
  for (int i = 0; i < trials; ++i) {
    const Eigen::Vector3d m = Eigen::Vector3d(draw_real(rng, -1, 1), draw_real(rng, -1, 1),
                                              draw_real(rng, -1, 1)).normalized();
    const Eigen::Vector3d nn = Eigen::Vector3d(draw_real(rng, -1, 1), draw_real(rng, -1, 1),
                                               draw_real(rng, -1, 1)).normalized();
    const double scale = std::sqrt(2.0 + 2.0 * std::abs(nn.dot(m))) * draw_real(rng, 1.0, 1.5);
    const int ancilla = draw(rng, 1, 2);
    const JointPom jp = bloch_joint_pom(nn, m, scale, ancilla);
    const int d = jp.dim();
    const Op a_op = tensor_product(
        Op(nn(0) * pauli::x() + nn(1) * pauli::y() + nn(2) * pauli::z()), identity(ancilla));
    const Op b_op = tensor_product(
        Op(m(0) * pauli::x() + m(1) * pauli::y() + m(2) * pauli::z()), identity(ancilla));
    const Observable a = Observable::from_operator(a_op);
    const Observable b = Observable::from_operator(b_op);

    const DensityState pure = random::pure_state(rng, d);
    const JointUncertaintyReport rep = joint_uncertainty_report(jp, a, b, pure);
    if (!rep.check1 || !rep.check2) ++r.violations;

    const MeasurementScheme s = interacting_realization(jp, static_cast<std::uint64_t>(i));
    const auto noise = noise_operators(s, {a, b}, pure);
    record(r, std::abs(noise[0].mean) + std::abs(noise[1].mean), 1e-9);
    record(r, std::abs(noise[0].variance - rep.epsilon_a * rep.epsilon_a), 1e-9);
    record(r, std::abs(noise[1].variance - rep.epsilon_b * rep.epsilon_b), 1e-9);
    const Op joint_state = tensor_product(pure.matrix(), s.probe_state().matrix());
    const Complex lhs = trace_product(commutator(noise[0].op, noise[1].op), joint_state);
    const Complex rhs = trace_product(commutator(a.matrix(), b.matrix()), pure.matrix());
    // Unbiased meters give <[N1, N2]> = -<[A, B]>; only its modulus enters the bound.
    record(r, std::abs(lhs + rhs), 1e-9);

    const JointUncertaintyReport mixed = joint_uncertainty_report(jp, a, b, random::state(rng, d));
    if (!mixed.check1 || !mixed.check2) ++mixed_failures;
    ++r.trials;
  }
  r.extras["mixed_state_failures"] = mixed_failures;
  return r;
}

SuiteResult sql(int trials, Engine& rng) {
  SuiteResult r;
  const int cap = 50 * trials;
  double worst_mean_gap = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  int nontrivial = 0;
  int beaten_unconditioned = 0;
  while (r.trials < trials && r.generated < cap) {
    ++r.generated;
    const int d = draw(rng, 2, 4);
    const Observable a = random::observable(rng, d, coin(rng));
    if (a.size() < 2) continue;
    const Instrument t = random::unbiased_compatible_instrument(rng, a, draw(rng, 2, 4));
    const Hamiltonian h = Hamiltonian::from_matrix(random::hermitian(rng, d));
    const double tau = draw_real(rng, 0.05, 2.0);
    const DensityState rho = random::state(rng, d);
    const SqlReport rep = sql_report(t, a, h, tau, rho);

    double weighted = 0.0;
    for (const SqlRow& row : rep.rows) {
      if (row.uncertainty) weighted += row.probability * *row.uncertainty * *row.uncertainty;
    }
    worst_mean_gap = std::max(worst_mean_gap, std::abs(weighted - rep.delta_sq));

    if (!rep.condition_holds) {
      if (!rep.sql_holds) ++beaten_unconditioned;
      continue;
    }
    ++r.trials;
    min_margin = std::min(min_margin, rep.delta_sq - rep.rhs);
    if (rep.rhs > 1e-6) ++nontrivial;
    if (!rep.sql_holds) ++r.violations;
    r.max_error = std::max(r.max_error, std::max(0.0, rep.rhs - rep.delta_sq));
  }
  r.extras["filtered_out"] = r.generated - r.trials;
  r.extras["max_weighted_mean_error"] = worst_mean_gap;
  r.extras["min_margin"] = r.trials > 0 ? min_margin : 0.0;
  r.extras["nonzero_bound"] = nontrivial;
  r.extras["beaten_without_condition"] = beaten_unconditioned;
  if (worst_mean_gap > 1e-9) ++r.violations;
  return r;
}

SuiteResult sequential(int trials, Engine& rng) {
  SuiteResult r;
  for (int i = 0; i < trials; ++i) {
    const int d = draw(rng, 2, 4);
    const Instrument t = random::instrument(rng, d, draw(rng, 1, 3), 2);
    const Instrument u = random::instrument(rng, d, draw(rng, 1, 3), 2);
    const DensityState rho = random::state(rng, d);
    const std::vector<Instrument> single{t};
    const JointDistribution seq = sequential_distribution(single, rho);
    const Distribution born = born_distribution(associated_pom(t), rho);
    double err = 0.0;
    for (std::size_t k = 0; k < born.probs.size(); ++k) err = std::max(err, std::abs(seq.probs[k] - born.probs[k]));

    const std::vector<Instrument> pair{t, u};
    const std::vector<double> times{draw_real(rng, 0, 1), draw_real(rng, 1, 2)};
    const JointDistribution plain = sequential_distribution(pair, rho);
    const JointDistribution timed = timed_sequential_distribution(pair, times, Hamiltonian::zero(d), rho);
    for (std::size_t k = 0; k < plain.probs.size(); ++k) err = std::max(err, std::abs(plain.probs[k] - timed.probs[k]));
    record(r, err, 1e-12);
    ++r.trials;
  }
  return r;
}

using SuiteFn = std::function<SuiteResult(int, Engine&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"robertson", robertson},       {"holevo", holevo},   {"precision", precision_identity},
      {"precision_zero", precision_zero}, {"diagonal_support", diagonal_support}, {"naimark", naimark},
      {"realize", realize},           {"posterior", posterior}, {"joint", joint},
      {"sql", sql},                   {"sequential", sequential},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("run_suite: trials must be positive");
  for (const auto& [suite, fn] : registry()) {
    if (suite != name) continue;
    Engine rng(seed);
    SuiteResult r = fn(trials, rng);
    r.name = suite;
    if (r.generated == 0) r.generated = r.trials;
    return r;
  }
  throw InvalidArgument("run_suite: unknown suite '" + std::string(name) + "'");
}

}  // namespace qmeter
