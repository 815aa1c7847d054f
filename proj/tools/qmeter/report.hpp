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
#ifndef QMETER_TOOLS_REPORT_HPP_
#define QMETER_TOOLS_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qmeter::cli {

struct Table {
  std::vector<std::string> columns;
  /// nullopt cells are undefined values (e.g. a prediction on a null posterior).
  std::vector<std::vector<std::optional<double>>> rows;
};

struct Report {
  nlohmann::json scenario;
  std::string kind;
  std::map<std::string, double> scalars;
  /// Informational booleans.
  std::map<std::string, bool> flags;
  /// Asserted booleans; any false check fails the run.
  std::map<std::string, bool> checks;
  std::map<std::string, std::string> notes;
  std::map<std::string, Table> tables;
  std::optional<double> wall_time;

  bool pass() const;
};

enum class Format { kJson, kCsv };

/// json: keys sorted, floats with 17 significant digits.
/// csv: header "path,value", then one row per scalar, flag, check, note and
/// table row. Throws std::domain_error on a non-finite number.
std::string emit_report(const Report& r, Format format);

nlohmann::json to_json(const Report& r);

/// Deterministic JSON text: sorted keys, two-space indent, %.17g floats.
std::string write_json(const nlohmann::json& v);

}  // namespace qmeter::cli

#endif  // QMETER_TOOLS_REPORT_HPP_
