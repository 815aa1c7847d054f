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
#ifndef QMETER_SUITES_HPP_
#define QMETER_SUITES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qmeter {

struct SuiteResult {
  std::string name;
  int trials = 0;      // trials actually evaluated against the property
  int generated = 0;   // candidates drawn, including ones filtered out
  int violations = 0;
  double max_error = 0.0;
  std::map<std::string, double> extras;
  bool pass() const { return violations == 0 && trials > 0; }
};

/// Names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one randomized property suite. \p trials is the number of accepted
/// trials; filtered suites (sql) draw candidates until that many pass the
/// filter or 50 x trials candidates were drawn. Throws InvalidArgument for
/// unknown names.
SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed);

}  // namespace qmeter

#endif  // QMETER_SUITES_HPP_
