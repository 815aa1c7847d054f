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
#include "qmeter/repeated.hpp"

#include <cmath>
#include <string>

#include "qmeter/errors.hpp"
#include "qmeter/measurement.hpp"
#include "qmeter/metrics.hpp"

namespace qmeter {
namespace {

void require_dims(const Instrument& t, const Observable& a, const DensityState& rho) {
  if (t.dim() != a.dim() || t.dim() != rho.dim()) {
    throw DimensionError("instrument, observable and state dimensions differ");
  }
}

// sum_l (x - a_l)^2 Tr[P_l rho]
double scatter_about(double x, const Observable& a, const DensityState& rho) {
  double total = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double gap = x - a.outcomes()[l];
    total += gap * gap * trace_product(a.projectors()[l], rho.matrix()).real();
  }
  return total;
}

// Everything the prediction quantities share for one (t, a, h, tau, rho).
struct Prediction {
  PosteriorFamily family;
  Pom pom;
  std::vector<std::optional<double>> h_of_x;
  std::vector<std::optional<double>> delta_sq_of_x;
};

Prediction predict(const Instrument& t, const Observable& a, const Hamiltonian& h, double tau,
                   const DensityState& rho) {
  require_dims(t, a, rho);
  if (h.dim() != t.dim()) throw DimensionError("Hamiltonian dimension differs from the system");
  Prediction p{posterior_family(t, rho), associated_pom(t), {}, {}};
  const Op a_tau = heisenberg(a.matrix(), h, tau);
  for (const PosteriorEntry& e : p.family.entries) {
    if (!e.posterior) {
      p.h_of_x.emplace_back();
      p.delta_sq_of_x.emplace_back();
      continue;
    }
    const double hx = trace_product(e.posterior->matrix(), a_tau).real();
    const Distribution second = born_distribution(p.pom, evolve(*e.posterior, h, tau));
    double dsq = 0.0;
    for (std::size_t k = 0; k < second.labels.size(); ++k) {
      dsq += (second.labels[k] - hx) * (second.labels[k] - hx) * second.probs[k];
    }
    p.h_of_x.emplace_back(hx);
    p.delta_sq_of_x.emplace_back(dsq);
  }
  return p;
}

}  // namespace

Op heisenberg(const Op& a, const Hamiltonian& h, double tau) {
  if (a.rows() != h.dim()) throw DimensionError("heisenberg: dimensions differ");
  if (tau == 0.0) return a;
  const Op u = h.propagator(tau);
  const Op out = u.adjoint() * a * u;
  return 0.5 * (out + out.adjoint());
}

double resolution(const Instrument& t, const Observable& a, const DensityState& rho) {
  require_dims(t, a, rho);
  const PosteriorFamily family = posterior_family(t, rho);
  double total = 0.0;
  for (const PosteriorEntry& e : family.entries) {
    if (e.posterior) total += e.probability * scatter_about(e.outcome, a, *e.posterior);
  }
  return std::sqrt(std::max(0.0, total));
}

ResolutionDecomposition resolution_decomposition(const Instrument& t, const Observable& a,
                                                 const DensityState& rho) {
  require_dims(t, a, rho);
  const PosteriorFamily family = posterior_family(t, rho);
  const Pom sharp = Pom::from_observable(a);
  ResolutionDecomposition out{0.0, 0.0};
  for (const PosteriorEntry& e : family.entries) {
    if (!e.posterior) continue;
    const Spread s = spread(sharp, *e.posterior);
    out.posterior_variance += e.probability * s.variance;
    out.prediction_bias += e.probability * (s.mean - e.outcome) * (s.mean - e.outcome);
  }
  return out;
}

std::vector<std::optional<double>> predictor(const Instrument& t, const Observable& a,
                                             const Hamiltonian& h, double tau,
                                             const DensityState& rho) {
  return predict(t, a, h, tau, rho).h_of_x;
}

double conditional_uncertainty(const Instrument& t, const Observable& a, const Hamiltonian& h,
                               double tau, const DensityState& rho, double x) {
  const auto k = t.index_of(x);
  if (!k) throw InvalidArgument("conditional_uncertainty: unknown outcome " + std::to_string(x));
  const Prediction p = predict(t, a, h, tau, rho);
  if (!p.delta_sq_of_x[*k]) {
    throw NullPosteriorError("conditional_uncertainty: outcome " + std::to_string(x) +
                             " has zero probability");
  }
  return *p.delta_sq_of_x[*k];
}

double predictive_uncertainty(const Instrument& t, const Observable& a, const Hamiltonian& h,
                              double tau, const DensityState& rho) {
  const Prediction p = predict(t, a, h, tau, rho);
  double total = 0.0;
  for (std::size_t k = 0; k < p.family.entries.size(); ++k) {
    if (p.delta_sq_of_x[k]) total += p.family.entries[k].probability * *p.delta_sq_of_x[k];
  }
  return total;
}

SqlReport sql_report(const Instrument& t, const Observable& a, const Hamiltonian& h, double tau,
                     const DensityState& rho) {
  require_dims(t, a, rho);
  const Pom pom = associated_pom(t);
  require_compatible(pom, a);
  if (!is_unbiased(pom, a)) throw BiasError("sql_report: associated POM is biased");

  const Prediction p = predict(t, a, h, tau, rho);
  SqlReport r{};
  double sigma_sq = 0.0;
  for (std::size_t k = 0; k < p.family.entries.size(); ++k) {
    const PosteriorEntry& e = p.family.entries[k];
    SqlRow row{e.outcome, e.probability, p.h_of_x[k], std::nullopt};
    if (e.posterior) {
      sigma_sq += e.probability * scatter_about(e.outcome, a, *e.posterior);
      r.delta_sq += e.probability * *p.delta_sq_of_x[k];
      row.uncertainty = std::sqrt(std::max(0.0, *p.delta_sq_of_x[k]));
    } else {
      r.excluded_weight += e.probability;
    }
    r.rows.push_back(row);
  }
  r.sigma = std::sqrt(std::max(0.0, sigma_sq));

  const DensityState after = normalize_state(apply_total(t, rho.matrix()));
  r.epsilon_after = precision(pom, a, evolve(after, h, tau));
  r.rhs = std::abs(commutator_trace(a.matrix(), heisenberg(a.matrix(), h, tau), after));
  r.condition_holds = r.sigma <= r.epsilon_after + 1e-12;
  r.sql_holds = r.delta_sq >= r.rhs - 1e-9;
  r.excluded_flag = r.excluded_weight > 1e-9;
  return r;
}

}  // namespace qmeter
