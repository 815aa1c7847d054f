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
#ifndef QMETER_TOOLS_CONFIG_HPP_
#define QMETER_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qmeter/joint.hpp"
#include "qmeter/models.hpp"
#include "qmeter/search.hpp"
#include "qmeter/types.hpp"

namespace qmeter::cli {

enum class ScenarioKind { kBorn, kPrecision, kJoint, kSql, kRealize, kNaimark, kSuite, kSearch };

std::string_view to_string(ScenarioKind k);

/// Invalid configuration; path names the offending field, e.g. "model.eta".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct JointFixture {
  JointPom pom;
  Observable a;
  Observable b;
};

struct SuiteSpec {
  std::string name;
  int trials = 100;
};

/// Validated scenario. The canonical document is kept for echo and
/// serialization; the remaining fields are built from it.
struct ScenarioConfig {
  nlohmann::json document;
  ScenarioKind kind = ScenarioKind::kBorn;
  int dim = 0;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  bool timing = false;

  std::optional<Observable> observable;
  std::optional<DensityState> state;
  std::optional<Hamiltonian> hamiltonian;
  double tau = 0.0;
  std::optional<Instrument> instrument;
  std::optional<Pom> pom;
  std::optional<JointFixture> joint;
  std::optional<SuiteSpec> suite;
  SearchOptions search;
};

ScenarioConfig parse_config(std::string_view bytes);
ScenarioConfig parse_config_json(const nlohmann::json& document);

/// Canonical form: keys sorted, two-space indent, trailing newline.
std::string serialize_config(const ScenarioConfig& cfg);

/// Reads QMETER_TOL; unset yields nullopt, malformed or non-positive
/// values throw ConfigError.
std::optional<double> tolerance_from_env();

}  // namespace qmeter::cli

#endif  // QMETER_TOOLS_CONFIG_HPP_
