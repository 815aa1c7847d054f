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
#include "qmeter/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/measurement.hpp"
#include "qmeter/metrics.hpp"
#include "qmeter/repeated.hpp"
#include "qmeter/suites.hpp"

namespace qmeter::cli {
namespace {

double tol(const ScenarioConfig& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

Pom measurement_pom(const ScenarioConfig& cfg) {
  if (cfg.pom) return *cfg.pom;
  if (cfg.instrument) return associated_pom(*cfg.instrument);
  return Pom::from_observable(*cfg.observable);
}

Table outcome_table(const SqlReport& s) {
  Table t{{"outcome", "probability", "prediction", "uncertainty"}, {}};
  for (const SqlRow& row : s.rows) t.rows.push_back({row.outcome, row.probability, row.prediction, row.uncertainty});
  return t;
}

void add_sql(Report& r, const SqlReport& s) {
  r.scalars["sigma"] = s.sigma;
  r.scalars["epsilon_after"] = s.epsilon_after;
  r.scalars["delta_sq"] = s.delta_sq;
  r.scalars["rhs"] = s.rhs;
  r.scalars["excluded_weight"] = s.excluded_weight;
  r.flags["condition_holds"] = s.condition_holds;
  r.flags["sql_holds"] = s.sql_holds;
  r.flags["excluded_flag"] = s.excluded_flag;
  r.checks["implication"] = s.consistent();
  r.tables["outcomes"] = outcome_table(s);
}

void born(const ScenarioConfig& cfg, Report& r) {
  const Distribution d = born_distribution(measurement_pom(cfg), *cfg.state);
  Table t{{"outcome", "probability"}, {}};
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < d.labels.size(); ++k) {
    t.rows.push_back({d.labels[k], d.probs[k]});
    total += d.probs[k];
    mean += d.labels[k] * d.probs[k];
  }
  r.scalars["total_probability"] = total;
  r.scalars["mean"] = mean;
  r.checks["normalized"] = std::abs(total - 1.0) <= tol(cfg, kEqualityTol);
  r.tables["distribution"] = std::move(t);
}

void precision_kind(const ScenarioConfig& cfg, Report& r) {
  const Pom x = measurement_pom(cfg);
  const Observable& a = *cfg.observable;
  const DensityState& rho = *cfg.state;
  const double eps = precision(x, a, rho);
  const PrecisionDecomposition dec = precision_decomposition(x, a, rho);
  const bool unbiased = is_unbiased(x, a);
  const double identity_rhs = spread(x, rho).variance - spread(Pom::from_observable(a), rho).variance;
  const double limit = tol(cfg, 1e-9);
  r.scalars["epsilon"] = eps;
  r.scalars["epsilon_sq"] = eps * eps;
  r.scalars["pom_variance"] = dec.pom_variance;
  r.scalars["operator_variance"] = dec.operator_variance;
  r.scalars["bias"] = dec.bias;
  r.scalars["variance_difference"] = identity_rhs;
  r.flags["unbiased"] = unbiased;
  r.checks["decomposition"] = std::abs(eps * eps - dec.squared_precision()) <= limit;
  if (unbiased) r.checks["unbiased_identity"] = std::abs(eps * eps - identity_rhs) <= limit;
  const JointDistribution mu = compatible_joint(x, a, rho);
  Table t{{"x", "a", "probability"}, {}};
  for (std::size_t k = 0; k < mu.probs.size(); ++k) t.rows.push_back({mu.labels[k][0], mu.labels[k][1], mu.probs[k]});
  r.tables["joint"] = std::move(t);
}

void joint_kind(const ScenarioConfig& cfg, Report& r) {
  const JointFixture& f = *cfg.joint;
  const JointUncertaintyReport j = joint_uncertainty_report(f.pom, f.a, f.b, *cfg.state, tol(cfg, 1e-10));
  r.scalars["epsilon_a"] = j.epsilon_a;
  r.scalars["epsilon_b"] = j.epsilon_b;
  r.scalars["delta_x"] = j.delta_x;
  r.scalars["delta_y"] = j.delta_y;
  r.scalars["commutator"] = j.commutator;
  r.scalars["bound1_lhs"] = j.epsilon_a * j.epsilon_b;
  r.scalars["bound1_rhs"] = j.commutator / 2.0;
  r.scalars["bound2_lhs"] = j.delta_x * j.delta_y;
  r.scalars["bound2_rhs"] = j.commutator;
  r.checks["bound1"] = j.check1;
  r.checks["bound2"] = j.check2;
  Table t{{"x", "y", "probability"}, {}};
  for (std::size_t i = 0; i < f.pom.x_outcomes().size(); ++i) {
    for (std::size_t k = 0; k < f.pom.y_outcomes().size(); ++k) {
      const double p = trace_product(f.pom.effect(i, k), cfg.state->matrix()).real();
      t.rows.push_back({f.pom.x_outcomes()[i], f.pom.y_outcomes()[k], p});
    }
  }
  r.tables["grid"] = std::move(t);
}

void sql_kind(const ScenarioConfig& cfg, Report& r) {
  add_sql(r, sql_report(*cfg.instrument, *cfg.observable, *cfg.hamiltonian, cfg.tau, *cfg.state));
}

void realize_kind(const ScenarioConfig& cfg, Report& r) {
  const MeasurementScheme s = realize_instrument(*cfg.instrument, cfg.seed);
  const double d = choi_distance(*cfg.instrument, scheme_to_instrument(s));
  r.scalars["choi_distance"] = d;
  r.scalars["probe_dim"] = s.probe_dim();
  r.checks["round_trip"] = d <= tol(cfg, 1e-9);
}

void naimark_kind(const ScenarioConfig& cfg, Report& r) {
  const Pom x = measurement_pom(cfg);
  const NaimarkDilation nd = naimark_dilate(x);
  const Op& v = nd.isometry.matrix();
  const double iso = operator_norm(v.adjoint() * v - identity(x.dim()));
  double eff = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto& labels = nd.pvm.outcomes();
    const auto at = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), x.outcomes()[k]) - labels.begin());
    eff = std::max(eff, operator_norm(v.adjoint() * nd.pvm.projectors()[at] * v - x.effects()[k]));
  }
  const double limit = tol(cfg, kEqualityTol);
  r.scalars["isometry_error"] = iso;
  r.scalars["effect_error"] = eff;
  r.scalars["dilated_dim"] = static_cast<double>(v.rows());
  r.checks["isometry"] = iso <= limit;
  r.checks["effects"] = eff <= limit;
}

void suite_kind(const ScenarioConfig& cfg, Report& r) {
  const SuiteResult s = run_suite(cfg.suite->name, cfg.suite->trials, cfg.seed);
  r.scalars["trials"] = s.trials;
  r.scalars["generated"] = s.generated;
  r.scalars["violations"] = s.violations;
  r.scalars["max_error"] = s.max_error;
  for (const auto& [k, v] : s.extras) r.scalars["extra." + k] = v;
  r.notes["suite"] = s.name;
  r.checks["pass"] = s.pass();
}

void search_kind(const ScenarioConfig& cfg, Report& r) {
  const SearchResult s = sql_violation_search(cfg.observable->dim(), *cfg.observable, *cfg.hamiltonian, cfg.tau, cfg.search);
  r.scalars["evaluated"] = s.evaluated;
  r.scalars["admissible"] = s.admissible;
  r.scalars["best_index"] = s.best_index;
  r.flags["found"] = s.found;
  r.notes["message"] = s.message;
  if (s.report) {
    r.scalars["ratio"] = s.ratio;
    r.scalars["margin"] = s.margin;
    add_sql(r, *s.report);
  }
}

}  // namespace

Report run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = cfg.document;
  r.kind = std::string(to_string(cfg.kind));
  try {
    switch (cfg.kind) {
      case ScenarioKind::kBorn:
        born(cfg, r);
        break;
      case ScenarioKind::kPrecision:
        precision_kind(cfg, r);
        break;
      case ScenarioKind::kJoint:
        joint_kind(cfg, r);
        break;
      case ScenarioKind::kSql:
        sql_kind(cfg, r);
        break;
      case ScenarioKind::kRealize:
        realize_kind(cfg, r);
        break;
      case ScenarioKind::kNaimark:
        naimark_kind(cfg, r);
        break;
      case ScenarioKind::kSuite:
        suite_kind(cfg, r);
        break;
      case ScenarioKind::kSearch:
        search_kind(cfg, r);
        break;
    }
  } catch (const qmeter::Error& e) {
    throw ScenarioError(r.kind + " scenario: " + e.what());
  }
  if (cfg.timing) {
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace qmeter::cli
