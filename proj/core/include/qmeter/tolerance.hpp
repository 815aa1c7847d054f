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

#ifndef QMETER_TOLERANCE_HPP_
#define QMETER_TOLERANCE_HPP_

namespace qmeter {

// Default absolute tolerances. Norms are operator (spectral) norms.
inline constexpr double kEqualityTol = 1e-10;
inline constexpr double kEigenClampTol = 1e-10;
inline constexpr double kClusterTol = 1e-8;
inline constexpr double kCompatibilityTol = 1e-8;
inline constexpr double kUnbiasedTol = 1e-9;
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kRankTruncation = 1e-12;
inline constexpr double kClampedMassTol = 1e-9;

struct Tolerances {
  double equality = kEqualityTol;
  double eigen_clamp = kEigenClampTol;
  double cluster = kClusterTol;
  double compatibility = kCompatibilityTol;
  double unbiased = kUnbiasedTol;
  double probability_floor = kProbabilityFloor;
};

}  // namespace qmeter

#endif  // QMETER_TOLERANCE_HPP_
