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
#include "qmeter/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "qmeter/errors.hpp"
#include "qmeter/expression.hpp"
#include "qmeter/operator.hpp"
#include "qmeter/suites.hpp"

namespace qmeter::cli {
namespace {

using json = nlohmann::json;

constexpr std::pair<ScenarioKind, std::string_view> kKinds[] = {
    {ScenarioKind::kBorn, "born"},       {ScenarioKind::kPrecision, "precision"},
    {ScenarioKind::kJoint, "joint"},     {ScenarioKind::kSql, "sql"},
    {ScenarioKind::kRealize, "realize"}, {ScenarioKind::kNaimark, "naimark"},
    {ScenarioKind::kSuite, "suite"},     {ScenarioKind::kSearch, "search"},
};

std::string field(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}
std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_keys(const json& v, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : v.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(field(path, key), "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& path, std::string_view key) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw ConfigError(field(path, key), "missing required key");
  return *it;
}

double real(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "value is not finite");
    return x;
  }
  if (v.is_string()) {
    try {
      return evaluate_expression(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }
  throw ConfigError(path, "expected a number or an expression string");
}

long long integer(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
    throw ConfigError(path, "out of range");
  }
  const long long x = v.get<long long>();
  if (x < lo || x > hi) {
    throw ConfigError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

Complex complex_entry(const json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 2) throw ConfigError(path, "complex entries are [re, im] pairs");
    return {real(v[0], element(path, 0)), real(v[1], element(path, 1))};
  }
  return {real(v, path), 0.0};
}

std::vector<double> reals(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(real(v[i], element(path, i)));
  return out;
}

// Tracks the Hilbert-space dimension shared by every input.
class Dim {
 public:
  explicit Dim(int d) : d_(d) {}
  void fix(int d, const std::string& path) {
    if (d_ == 0) {
      d_ = d;
    } else if (d != d_) {
      throw ConfigError(path, "dimension " + std::to_string(d) + " does not match " + std::to_string(d_));
    }
  }
  int need(const std::string& path) const {
    if (d_ == 0) throw ConfigError(path, "dimension unknown; set 'dim'");
    return d_;
  }
  int value() const { return d_; }

 private:
  int d_;
};

Op matrix(const json& v, const std::string& path, Dim& dim) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(v.size());
  Op m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string rp = element(path, static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(rp, "matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = complex_entry(row[static_cast<std::size_t>(j)], element(rp, static_cast<std::size_t>(j)));
    }
  }
  dim.fix(static_cast<int>(n), path);
  return m;
}

// Wraps library validation failures with the field path.
template <typename F>
auto guarded(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const qmeter::Error& e) {
    throw ConfigError(path, e.what());
  }
}

Observable parse_observable(const json& v, const std::string& path, Dim& dim) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    Op op;
    if (name == "sigma_x") {
      op = pauli::x();
    } else if (name == "sigma_y") {
      op = pauli::y();
    } else if (name == "sigma_z") {
      op = pauli::z();
    } else {
      throw ConfigError(path, "unknown observable '" + name + "'");
    }
    dim.fix(2, path);
    return Observable::from_operator(op);
  }
  check_keys(v, path, {"matrix"});
  const Op m = matrix(require(v, path, "matrix"), field(path, "matrix"), dim);
  return guarded(path, [&] {
    if (!is_hermitian(m, kEqualityTol)) throw InvalidArgument("observable matrix is not Hermitian");
    return Observable::from_operator(m);
  });
}

Ket parse_ket(const json& v, const std::string& path, Dim& dim) {
  const double r = std::sqrt(0.5);
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    Ket k(2);
    if (name == "zero") {
      k << 1.0, 0.0;
    } else if (name == "one") {
      k << 0.0, 1.0;
    } else if (name == "plus") {
      k << r, r;
    } else if (name == "minus") {
      k << r, -r;
    } else if (name == "plus_i") {
      k << r, Complex(0.0, r);
    } else if (name == "minus_i") {
      k << r, Complex(0.0, -r);
    } else {
      throw ConfigError(path, "unknown state '" + name + "'");
    }
    dim.fix(2, path);
    return k;
  }
  if (!v.is_object() || v.size() != 1) {
    throw ConfigError(path, "expected a name or an object with one of ket, equatorial, basis");
  }
  check_keys(v, path, {"ket", "equatorial", "basis"});
  if (v.contains("equatorial")) {
    dim.fix(2, path);
    return equatorial_ket(real(v["equatorial"], field(path, "equatorial")));
  }
  if (v.contains("basis")) {
    const int d = dim.need(path);
    Ket k = Ket::Zero(d);
    k(integer(v["basis"], field(path, "basis"), 0, d - 1)) = 1.0;
    return k;
  }
  const json& entries = v["ket"];
  const std::string kp = field(path, "ket");
  if (!entries.is_array() || entries.empty()) throw ConfigError(kp, "expected a non-empty array");
  Ket k(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    k(static_cast<Eigen::Index>(i)) = complex_entry(entries[i], element(kp, i));
  }
  dim.fix(static_cast<int>(k.size()), kp);
  if (std::abs(k.norm() - 1.0) > kEqualityTol) throw ConfigError(path, "state vector is not normalized");
  return k;
}

DensityState parse_state(const json& v, const std::string& path, Dim& dim) {
  if (v.is_string() && v.get<std::string>() == "mixed") return DensityState::maximally_mixed(dim.need(path));
  if (v.is_object() && v.contains("matrix")) {
    check_keys(v, path, {"matrix"});
    const Op m = matrix(v["matrix"], field(path, "matrix"), dim);
    return guarded(path, [&] { return DensityState::from_matrix(m); });
  }
  const Ket k = parse_ket(v, path, dim);
  return guarded(path, [&] { return DensityState::pure(k); });
}

Hamiltonian parse_hamiltonian(const json& v, const std::string& path, Dim& dim, double tau) {
  check_keys(v, path, {"name", "matrix", "hbar"});
  const double hbar = v.contains("hbar") ? real(v["hbar"], field(path, "hbar")) : 1.0;
  if (!(hbar > 0.0)) throw ConfigError(field(path, "hbar"), "must be positive");
  if (v.contains("name") == v.contains("matrix")) throw ConfigError(path, "give exactly one of name, matrix");
  if (v.contains("matrix")) {
    const Op m = matrix(v["matrix"], field(path, "matrix"), dim);
    return guarded(path, [&] { return Hamiltonian::from_matrix(m, hbar); });
  }
  const std::string name = text(v["name"], field(path, "name"));
  if (name == "zero") return Hamiltonian::zero(dim.need(path));
  if (name == "rotation_z_to_x") {
    if (!(tau > 0.0)) throw ConfigError(path, "rotation_z_to_x needs tau > 0");
    dim.fix(2, path);
    return rotation_z_to_x(tau, hbar);
  }
  throw ConfigError(field(path, "name"), "unknown hamiltonian '" + name + "'");
}

Instrument parse_model(const json& v, const std::string& path, Dim& dim, const std::optional<Observable>& a) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  const std::string name = text(require(v, path, "family"), field(path, "family"));
  const std::optional<ModelFamily> family = parse_model_family(name);
  if (!family) throw ConfigError(field(path, "family"), "unknown model family '" + name + "'");
  switch (*family) {
    case ModelFamily::kLuders:
      check_keys(v, path, {"family"});
      break;
    case ModelFamily::kUnsharp:
      check_keys(v, path, {"family", "eta", "unbiased"});
      break;
    case ModelFamily::kMeasurePrepare:
      check_keys(v, path, {"family", "psi0"});
      break;
    case ModelFamily::kVonNeumann:
      check_keys(v, path, {"family", "strength"});
      break;
  }
  if (!a) throw ConfigError(path, "a model needs 'observable'");
  ModelSpec spec{*a, *family, 1.0, true, std::nullopt, 1.0};
  spec.family = *family;
  if (v.contains("eta")) {
    spec.eta = real(v["eta"], field(path, "eta"));
    if (!(spec.eta > 0.0 && spec.eta <= 1.0)) throw ConfigError(field(path, "eta"), "must lie in (0, 1]");
  }
  if (v.contains("unbiased")) spec.unbiased = boolean(v["unbiased"], field(path, "unbiased"));
  if (v.contains("strength")) {
    spec.strength = real(v["strength"], field(path, "strength"));
    if (!(spec.strength >= 0.0 && spec.strength <= 1.0)) {
      throw ConfigError(field(path, "strength"), "must lie in [0, 1]");
    }
  }
  if (spec.family == ModelFamily::kMeasurePrepare) {
    spec.psi0 = parse_ket(require(v, path, "psi0"), field(path, "psi0"), dim);
  }
  return guarded(path, [&] { return build_model(spec); });
}

Pom parse_pom(const json& v, const std::string& path, Dim& dim) {
  check_keys(v, path, {"outcomes", "effects"});
  std::vector<double> labels = reals(require(v, path, "outcomes"), field(path, "outcomes"));
  const json& effects = require(v, path, "effects");
  const std::string ep = field(path, "effects");
  if (!effects.is_array() || effects.size() != labels.size()) throw ConfigError(ep, "need one effect per outcome");
  std::vector<Op> ops;
  for (std::size_t i = 0; i < effects.size(); ++i) ops.push_back(matrix(effects[i], element(ep, i), dim));
  return guarded(path, [&] { return Pom::from_effects(std::move(labels), std::move(ops)); });
}

Instrument parse_instrument(const json& v, const std::string& path, Dim& dim) {
  check_keys(v, path, {"outcomes", "kraus"});
  std::vector<double> labels = reals(require(v, path, "outcomes"), field(path, "outcomes"));
  const json& kraus = require(v, path, "kraus");
  const std::string kp = field(path, "kraus");
  if (!kraus.is_array() || kraus.size() != labels.size()) throw ConfigError(kp, "need one Kraus set per outcome");
  std::vector<std::vector<Op>> sets;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const std::string sp = element(kp, i);
    if (!kraus[i].is_array() || kraus[i].empty()) throw ConfigError(sp, "expected a non-empty array of matrices");
    std::vector<Op> set;
    for (std::size_t j = 0; j < kraus[i].size(); ++j) set.push_back(matrix(kraus[i][j], element(sp, j), dim));
    sets.push_back(std::move(set));
  }
  return guarded(path, [&] { return Instrument::from_kraus(std::move(labels), std::move(sets)); });
}

Eigen::Vector3d direction(const json& v, const std::string& path) {
  const std::vector<double> xs = reals(v, path);
  if (xs.size() != 3) throw ConfigError(path, "expected three components");
  const Eigen::Vector3d d(xs[0], xs[1], xs[2]);
  if (d.norm() < 1e-12) throw ConfigError(path, "direction must be non-zero");
  return d.normalized();
}

Observable spin_along(const Eigen::Vector3d& n, int ancilla) {
  const Op s = n(0) * pauli::x() + n(1) * pauli::y() + n(2) * pauli::z();
  return Observable::from_operator(tensor_product(s, identity(ancilla)));
}

JointFixture parse_joint(const json& v, const std::string& path, Dim& dim) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  const std::string fixture = text(require(v, path, "fixture"), field(path, "fixture"));
  if (fixture == "jxy") {
    check_keys(v, path, {"fixture", "scale"});
    const double scale = v.contains("scale") ? real(v["scale"], field(path, "scale")) : std::sqrt(2.0);
    dim.fix(2, path);
    return guarded(path, [&] {
      return JointFixture{jxy_joint_pom(scale), Observable::from_operator(pauli::x()),
                          Observable::from_operator(pauli::y())};
    });
  }
  if (fixture != "bloch") throw ConfigError(field(path, "fixture"), "unknown joint fixture '" + fixture + "'");
  check_keys(v, path, {"fixture", "scale", "n", "m", "ancilla"});
  const Eigen::Vector3d n = direction(require(v, path, "n"), field(path, "n"));
  const Eigen::Vector3d m = direction(require(v, path, "m"), field(path, "m"));
  const double scale =
      v.contains("scale") ? real(v["scale"], field(path, "scale")) : std::sqrt(2.0 + 2.0 * std::abs(n.dot(m)));
  const int ancilla = v.contains("ancilla") ? static_cast<int>(integer(v["ancilla"], field(path, "ancilla"), 1, 4)) : 1;
  dim.fix(2 * ancilla, path);
  return guarded(path, [&] {
    return JointFixture{bloch_joint_pom(n, m, scale, ancilla), spin_along(n, ancilla), spin_along(m, ancilla)};
  });
}

SuiteSpec parse_suite(const json& v, const std::string& path) {
  check_keys(v, path, {"name", "trials"});
  SuiteSpec s;
  s.name = text(require(v, path, "name"), field(path, "name"));
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw ConfigError(field(path, "name"), "unknown suite '" + s.name + "'");
  }
  if (v.contains("trials")) s.trials = static_cast<int>(integer(v["trials"], field(path, "trials"), 1, 1000000));
  return s;
}

void parse_search(const json& v, const std::string& path, SearchOptions& o) {
  check_keys(v, path, {"budget", "objective", "min_rhs", "step", "kraus_per_outcome"});
  if (v.contains("budget")) o.budget = static_cast<int>(integer(v["budget"], field(path, "budget"), 1, 1000000));
  if (v.contains("objective")) {
    const std::string name = text(v["objective"], field(path, "objective"));
    if (name == "ratio") {
      o.objective = SearchObjective::kRatio;
    } else if (name == "margin") {
      o.objective = SearchObjective::kMargin;
    } else {
      throw ConfigError(field(path, "objective"), "expected ratio or margin");
    }
  }
  if (v.contains("min_rhs")) {
    o.min_rhs = real(v["min_rhs"], field(path, "min_rhs"));
    if (!(o.min_rhs > 0.0)) throw ConfigError(field(path, "min_rhs"), "must be positive");
  }
  if (v.contains("step")) {
    o.step = real(v["step"], field(path, "step"));
    if (!(o.step > 0.0)) throw ConfigError(field(path, "step"), "must be positive");
  }
  if (v.contains("kraus_per_outcome")) {
    o.kraus_per_outcome = static_cast<int>(integer(v["kraus_per_outcome"], field(path, "kraus_per_outcome"), 1, 4));
  }
}

struct KindRules {
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
};

KindRules rules(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::kBorn:
      return {{"state"}, {"observable", "pom", "model", "instrument"}};
    case ScenarioKind::kPrecision:
      return {{"observable", "state"}, {"pom", "model", "instrument"}};
    case ScenarioKind::kJoint:
      return {{"joint", "state"}, {}};
    case ScenarioKind::kSql:
      return {{"observable", "hamiltonian", "tau", "state"}, {"model", "instrument"}};
    case ScenarioKind::kRealize:
      return {{}, {"observable", "model", "instrument"}};
    case ScenarioKind::kNaimark:
      return {{}, {"observable", "pom", "model", "instrument"}};
    case ScenarioKind::kSuite:
      return {{"suite"}, {}};
    case ScenarioKind::kSearch:
      return {{"observable", "hamiltonian", "tau"}, {"state", "search"}};
  }
  return {};
}

}  // namespace

std::string_view to_string(ScenarioKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

ScenarioConfig parse_config(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

ScenarioConfig parse_config_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "top level must be an object");
  ScenarioConfig cfg;
  cfg.document = doc;

  const std::string kind_name = text(require(doc, "", "kind"), "kind");
  const auto kind = std::find_if(std::begin(kKinds), std::end(kKinds),
                                 [&](const auto& p) { return p.second == kind_name; });
  if (kind == std::end(kKinds)) throw ConfigError("kind", "unknown scenario kind '" + kind_name + "'");
  cfg.kind = kind->first;

  const KindRules r = rules(cfg.kind);
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string_view> common{"kind", "dim", "seed", "tolerance", "output"};
    if (common.count(key) || std::find(r.required.begin(), r.required.end(), key) != r.required.end() ||
        std::find(r.optional.begin(), r.optional.end(), key) != r.optional.end()) {
      continue;
    }
    throw ConfigError(key, "unknown key for scenario kind '" + kind_name + "'");
  }
  for (std::string_view key : r.required) require(doc, "", key);

  Dim dim(doc.contains("dim") ? static_cast<int>(integer(doc["dim"], "dim", 1, 64)) : 0);
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("tolerance")) {
    cfg.tolerance = real(doc["tolerance"], "tolerance");
    if (!(*cfg.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  }
  if (doc.contains("output")) {
    check_keys(doc["output"], "output", {"timing"});
    if (doc["output"].contains("timing")) cfg.timing = boolean(doc["output"]["timing"], "output.timing");
  }
  if (doc.contains("tau")) {
    cfg.tau = real(doc["tau"], "tau");
    if (!(cfg.tau >= 0.0)) throw ConfigError("tau", "must be non-negative");
  }

  const int sources = static_cast<int>(doc.contains("pom")) + static_cast<int>(doc.contains("model")) +
                      static_cast<int>(doc.contains("instrument"));
  if (sources > 1) throw ConfigError("", "give at most one of pom, model, instrument");
  const bool needs_source = cfg.kind == ScenarioKind::kPrecision || cfg.kind == ScenarioKind::kSql ||
                            cfg.kind == ScenarioKind::kRealize || cfg.kind == ScenarioKind::kNaimark;
  if (needs_source && sources == 0) throw ConfigError("", "missing measurement: give a model or an instrument");
  if (cfg.kind == ScenarioKind::kBorn && sources == 0 && !doc.contains("observable")) {
    throw ConfigError("", "missing measurement: give an observable, pom, model or instrument");
  }

  if (doc.contains("observable")) cfg.observable = parse_observable(doc["observable"], "observable", dim);
  if (doc.contains("joint")) cfg.joint = parse_joint(doc["joint"], "joint", dim);
  if (doc.contains("pom")) cfg.pom = parse_pom(doc["pom"], "pom", dim);
  if (doc.contains("instrument")) cfg.instrument = parse_instrument(doc["instrument"], "instrument", dim);
  if (doc.contains("model")) cfg.instrument = parse_model(doc["model"], "model", dim, cfg.observable);
  if (doc.contains("hamiltonian")) cfg.hamiltonian = parse_hamiltonian(doc["hamiltonian"], "hamiltonian", dim, cfg.tau);
  if (doc.contains("state")) cfg.state = parse_state(doc["state"], "state", dim);
  if (doc.contains("suite")) cfg.suite = parse_suite(doc["suite"], "suite");
  if (doc.contains("search")) parse_search(doc["search"], "search", cfg.search);
  if (cfg.kind == ScenarioKind::kSearch && doc.contains("state") && cfg.state) cfg.search.rho = cfg.state;
  if (cfg.kind == ScenarioKind::kNaimark && sources == 0) throw ConfigError("", "naimark needs a pom, model or instrument");
  cfg.search.seed = cfg.seed;
  cfg.dim = dim.value();
  return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) { return cfg.document.dump(2) + "\n"; }

std::optional<double> tolerance_from_env() {
  const char* raw = std::getenv("QMETER_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw ConfigError("QMETER_TOL", std::string("expected a positive decimal, got '") + raw + "'");
  }
  return v;
}

}  // namespace qmeter::cli
