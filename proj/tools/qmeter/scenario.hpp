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
#ifndef QMETER_TOOLS_SCENARIO_HPP_
#define QMETER_TOOLS_SCENARIO_HPP_

#include <stdexcept>
#include <string>

#include "qmeter/config.hpp"
#include "qmeter/report.hpp"

namespace qmeter::cli {

/// A library error raised while executing a scenario, prefixed with the
/// scenario kind.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic given the config (wall time is only recorded when the
/// config asks for it). Checks use cfg.tolerance when set, otherwise their
/// own defaults.
Report run_scenario(const ScenarioConfig& cfg);

}  // namespace qmeter::cli

#endif  // QMETER_TOOLS_SCENARIO_HPP_
