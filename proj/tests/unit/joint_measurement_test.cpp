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
#include <gtest/gtest.h>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/joint.hpp"
#include "qmeter/metrics.hpp"
#include "qmeter/models.hpp"
#include "qmeter/random.hpp"
#include "test_util.hpp"

namespace {

using namespace qmeter;
using namespace qtest;

const double kS = std::sqrt(2.0);

Observable obs(const Op& m) { return Observable::from_operator(m); }

Eigen::Vector3d unit(random::Engine& rng) {
  std::normal_distribution<double> g;
  return Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
}

Op spin(const Eigen::Vector3d& n) { return n(0) * sx() + n(1) * sy() + n(2) * sz(); }

TEST(JointPom, JxyEffectsAndMarginals) {
  const JointPom m = jxy_joint_pom();
  ASSERT_EQ(m.x_outcomes().size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double x = m.x_outcomes()[i];
      const double y = m.y_outcomes()[j];
      EXPECT_NEAR(std::abs(x), kS, 1e-15);
      EXPECT_LT(maxdiff(m.effect(i, j), 0.25 * (eye(2) + (x / 2) * sx() + (y / 2) * sy())), 1e-15);
    }
  const auto [x, y] = marginals(m);
  for (std::size_t k = 0; k < 2; ++k) {
    const double sign = x.outcomes()[k] > 0 ? 1.0 : -1.0;
    EXPECT_LT(maxdiff(x.effects()[k], 0.5 * (eye(2) + sign * sx() / kS)), 1e-15);
    EXPECT_LT(maxdiff(y.effects()[k], 0.5 * (eye(2) + (y.outcomes()[k] > 0 ? 1.0 : -1.0) * sy() / kS)), 1e-15);
  }
}

TEST(JointPom, ProductPomHasConstantSecondMarginal) {
  const Pom e = Pom::from_observable(obs(sz()));
  const std::vector<double> p{0.2, 0.3, 0.5};
  std::vector<std::vector<Op>> grid(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (double pj : p) grid[i].push_back(pj * e.effects()[i]);
  const JointPom m = JointPom::from_grid(e.outcomes(), {0.0, 1.0, 2.0}, grid);
  const auto [x, y] = marginals(m);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(maxdiff(x.effects()[i], e.effects()[i]), 1e-15);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(maxdiff(y.effects()[j], p[j] * eye(2)), 1e-15);
}

TEST(JointPom, RejectsInvalidGrids) {
  EXPECT_THROW(JointPom::from_grid({0.0}, {0.0, 1.0}, {{0.5 * eye(2)}}), InvalidArgument);
  EXPECT_THROW(JointPom::from_grid({0.0}, {0.0, 1.0}, {{0.5 * eye(2), 0.4 * eye(2)}}), InvalidArgument);
  EXPECT_THROW(JointPom::from_grid({0.0}, {1.0, 1.0}, {{0.5 * eye(2), 0.5 * eye(2)}}), InvalidArgument);
}

TEST(JointUncertainty, JxyOnGroundStateSaturatesBoth) {
  const JointUncertaintyReport r =
      joint_uncertainty_report(jxy_joint_pom(), obs(sx()), obs(sy()), DensityState::basis(2, 0));
  EXPECT_NEAR(r.epsilon_a, 1.0, 1e-12);
  EXPECT_NEAR(r.epsilon_b, 1.0, 1e-12);
  EXPECT_NEAR(r.delta_x, kS, 1e-12);
  EXPECT_NEAR(r.delta_y, kS, 1e-12);
  EXPECT_NEAR(r.commutator, 2.0, 1e-12);
  EXPECT_NEAR(r.epsilon_a * r.epsilon_b, r.commutator / 2, 1e-9);
  EXPECT_NEAR(r.delta_x * r.delta_y, r.commutator, 1e-9);
  EXPECT_TRUE(r.check1);
  EXPECT_TRUE(r.check2);
}

TEST(JointUncertainty, CommutingPairHoldsVacuously) {
  // A = B = sigma_z measured jointly and sharply.
  const Pom z = Pom::from_observable(obs(sz()));
  const JointPom m = JointPom::from_grid(z.outcomes(), z.outcomes(),
                                         {{z.effects()[0], Op::Zero(2, 2)}, {Op::Zero(2, 2), z.effects()[1]}});
  random::Engine rng(1);
  const JointUncertaintyReport r = joint_uncertainty_report(m, obs(sz()), obs(sz()), random::state(rng, 2));
  EXPECT_NEAR(r.commutator, 0.0, 1e-14);
  EXPECT_TRUE(r.check1);
  EXPECT_TRUE(r.check2);
}

TEST(JointUncertainty, InflatedJxyGridsHoldStrictly) {
  for (double scale = 1.5; scale <= 4.0; scale += 0.25) {
    const JointUncertaintyReport r =
        joint_uncertainty_report(jxy_joint_pom(scale), obs(sx()), obs(sy()), DensityState::basis(2, 0));
    EXPECT_GT(r.epsilon_a * r.epsilon_b, r.commutator / 2 + 1e-6);
    EXPECT_GT(r.delta_x * r.delta_y, r.commutator + 1e-6);
  }
}

TEST(JointUncertainty, RejectsBiasedOrIncompatibleMarginals) {
  const DensityState rho = DensityState::basis(2, 0);
  EXPECT_THROW(joint_uncertainty_report(jxy_joint_pom(), obs(sz()), obs(sy()), rho), CompatibilityError);
  EXPECT_THROW(joint_uncertainty_report(jxy_joint_pom(), obs(2.0 * sx()), obs(sy()), rho), BiasError);
}

TEST(JointUncertainty, RandomBlochPairsOnPureStates) {
  random::Engine rng(2);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d n = unit(rng);
    const Eigen::Vector3d m = unit(rng);
    const int anc = 1 + i % 2;
    const double scale = std::sqrt(2 + 2 * std::abs(n.dot(m))) * (1.0 + 0.01 * (i % 10));
    const JointPom jp = bloch_joint_pom(n, m, scale, anc);
    const Observable a = obs(tensor_product(spin(n), eye(anc)));
    const Observable b = obs(tensor_product(spin(m), eye(anc)));
    const DensityState psi = random::pure_state(rng, 2 * anc);
    const JointUncertaintyReport r = joint_uncertainty_report(jp, a, b, psi);
    EXPECT_TRUE(r.check1);
    EXPECT_TRUE(r.check2);
    // The joint bound doubles the Holevo bound on the same marginals.
    const auto [x, y] = marginals(jp);
    const UncertaintyCheck h = holevo_check(x, y, psi);
    if (r.commutator > 1e-6) EXPECT_NEAR(r.commutator / h.rhs, 2.0, 1e-9);
  }
}

TEST(NoiseOperators, FaithfulSchemeHasNoNoiseOnEigenstates) {
  const Op cnot = mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const MeasurementScheme s = MeasurementScheme::create(DensityState::basis(2, 0), cnot, {obs(sz())});
  for (int k = 0; k < 2; ++k) {
    const auto n = noise_operators(s, {obs(sz())}, DensityState::basis(2, k));
    EXPECT_NEAR(n[0].mean, 0.0, 1e-14);
    EXPECT_NEAR(n[0].variance, 0.0, 1e-14);
  }
}

TEST(NoiseOperators, JxyRealizationVariancesEqualSquaredPrecision) {
  const MeasurementScheme s = interacting_realization(jxy_joint_pom(), 5);
  const auto n = noise_operators(s, {obs(sx()), obs(sy())}, DensityState::basis(2, 0));
  ASSERT_EQ(n.size(), 2u);
  EXPECT_NEAR(n[0].mean, 0.0, 1e-9);
  EXPECT_NEAR(n[1].mean, 0.0, 1e-9);
  EXPECT_NEAR(n[0].variance, 1.0, 1e-9);
  EXPECT_NEAR(n[1].variance, 1.0, 1e-9);
}

TEST(NoiseOperators, CommutatorIdentityOnRandomStates) {
  // Expanding [U'M1U - A, U'M2U - B] with unbiased meters leaves -<[A, B]>.
  random::Engine rng(3);
  const MeasurementScheme s = interacting_realization(jxy_joint_pom(), 0);
  const Observable a = obs(sx());
  const Observable b = obs(sy());
  for (int i = 0; i < 20; ++i) {
    const DensityState psi = random::pure_state(rng, 2);
    const auto n = noise_operators(s, {a, b}, psi);
    const Op joint = tensor_product(psi.matrix(), s.probe_state().matrix());
    const Complex lhs = ((n[0].op * n[1].op - n[1].op * n[0].op) * joint).trace();
    const Complex rhs = ((sx() * sy() - sy() * sx()) * psi.matrix()).trace();
    EXPECT_LT(std::abs(lhs + rhs), 1e-9);
    EXPECT_NEAR(std::abs(lhs), std::abs(rhs), 1e-9);
  }
}

TEST(NoiseOperators, RealizationReproducesTheJointPom) {
  const JointPom m = jxy_joint_pom(1.8);
  const MeasurementScheme s = interacting_realization(m, 2);
  const JointInstrument j = scheme_to_joint_instrument(s);
  random::Engine rng(4);
  const DensityState rho = random::state(rng, 2);
  for (std::size_t k = 0; k < j.labels.size(); ++k) {
    double p = 0.0;
    for (const Op& kr : j.kraus_sets[k]) p += (kr * rho.matrix() * kr.adjoint()).trace().real();
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        if (j.labels[k] == std::vector<double>{m.x_outcomes()[x], m.y_outcomes()[y]}) {
          EXPECT_NEAR(p, (m.effect(x, y) * rho.matrix()).trace().real(), 1e-10);
        }
      }
  }
}

TEST(NoiseOperators, RejectsMixedProbe) {
  const MeasurementScheme s = MeasurementScheme::create(DensityState::maximally_mixed(2), eye(4), {obs(sz())});
  EXPECT_THROW(noise_operators(s, {obs(sz())}, DensityState::basis(2, 0)), InvalidArgument);
  const MeasurementScheme pure = MeasurementScheme::create(DensityState::basis(2, 0), eye(4), {obs(sz())});
  EXPECT_THROW(noise_operators(pure, {obs(sz()), obs(sx())}, DensityState::basis(2, 0)), InvalidArgument);
}

TEST(BlochJointPom, RejectsBadParameters) {
  const Eigen::Vector3d x(1, 0, 0);
  EXPECT_THROW(bloch_joint_pom(x, Eigen::Vector3d(0, 2, 0), 2.0), InvalidArgument);
  EXPECT_THROW(bloch_joint_pom(x, Eigen::Vector3d(0, 1, 0), 0.0), InvalidArgument);
  EXPECT_THROW(bloch_joint_pom(x, Eigen::Vector3d(0, 1, 0), 1.0), InvalidArgument);
}

}  // namespace
