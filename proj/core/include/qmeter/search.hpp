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
#ifndef QMETER_SEARCH_HPP_
#define QMETER_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "qmeter/repeated.hpp"
#include "qmeter/types.hpp"

namespace qmeter {

enum class SearchObjective {
  kRatio,   // minimize delta_sq / rhs among candidates with rhs >= min_rhs
  kMargin,  // maximize rhs - delta_sq
};

struct SearchOptions {
  int budget = 200;
  std::uint64_t seed = 0;
  SearchObjective objective = SearchObjective::kRatio;
  double min_rhs = 1e-3;
  /// Prior state; defaults to the maximally mixed state.
  std::optional<DensityState> rho;
  /// Gaussian scale of local Kraus perturbations.
  double step = 0.3;
  int kraus_per_outcome = 2;
};

struct SearchResult {
  bool found = false;
  std::string message;
  std::optional<Instrument> best;
  std::optional<SqlReport> report;
  double ratio = 0.0;   // delta_sq / rhs of the best candidate
  double margin = 0.0;  // rhs - delta_sq of the best candidate
  int evaluated = 0;
  int admissible = 0;  // candidates with rhs >= min_rhs
  int best_index = -1;
};

/// Randomized search for instruments with delta_sq < rhs. Candidates share
/// the projective POM of a (so every candidate is unbiased and compatible)
/// and differ in their post-measurement channels: measure-and-prepare
/// restarts alternate with local perturbations of the incumbent,
/// re-normalized per outcome by the polar factor (sum V^dagger V)^(-1/2).
/// Deterministic per seed; ties keep the earlier candidate.
SearchResult sql_violation_search(int dim, const Observable& a, const Hamiltonian& h, double tau,
                                  const SearchOptions& options);

}  // namespace qmeter

#endif  // QMETER_SEARCH_HPP_
