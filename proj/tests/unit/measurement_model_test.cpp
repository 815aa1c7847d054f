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

#include <numbers>

#include "qmeter/dilation.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/measurement.hpp"
#include "qmeter/models.hpp"
#include "qmeter/random.hpp"
#include "test_util.hpp"

namespace {

using namespace qmeter;
using namespace qtest;

const double kR = std::sqrt(0.5);

Observable z_obs() { return Observable::from_operator(sz()); }
Observable x_obs() { return Observable::from_operator(sx()); }
DensityState plus_state() { return DensityState::pure(ket({kR, kR})); }
DensityState zero_state() { return DensityState::basis(2, 0); }

// Distribution as a label -> probability lookup.
double prob(const Distribution& d, double label) {
  for (std::size_t k = 0; k < d.labels.size(); ++k) {
    if (d.labels[k] == label) return d.probs[k];
  }
  return -1.0;
}

double prob(const JointDistribution& d, std::vector<double> labels) {
  for (std::size_t k = 0; k < d.labels.size(); ++k) {
    if (d.labels[k].size() != labels.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < labels.size(); ++i) same = same && std::abs(d.labels[k][i] - labels[i]) < 1e-12;
    if (same) return d.probs[k];
  }
  return -1.0;
}

// Phi_k(rho) = Tr_K[(1 (x) M_k) U (rho (x) sigma) U^dagger], evaluated directly.
Op scheme_map(const MeasurementScheme& s, std::size_t k, const Op& rho) {
  const int d = s.system_dim();
  const int n = s.probe_dim();
  const Op big = s.coupling() * tensor_product(rho, s.probe_state().matrix()) * s.coupling().adjoint();
  const Op meter = tensor_product(eye(d), s.meters().front().projectors()[k]);
  Op out = Op::Zero(d, d);
  const Op m = meter * big;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < n; ++a) out(i, j) += m(i * n + a, j * n + a);
  return out;
}

TEST(BornDistribution, Examples) {
  const Pom z = Pom::from_observable(z_obs());
  const Distribution d0 = born_distribution(z, zero_state());
  EXPECT_NEAR(prob(d0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(prob(d0, -1.0), 0.0, 1e-15);
  const Distribution dm = born_distribution(z, DensityState::maximally_mixed(2));
  EXPECT_NEAR(prob(dm, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(prob(dm, -1.0), 0.5, 1e-15);
  const Pom unsharp = Pom::from_effects({2.0, -2.0}, {0.5 * (eye(2) + 0.5 * sz()), 0.5 * (eye(2) - 0.5 * sz())});
  const Distribution du = born_distribution(unsharp, zero_state());
  EXPECT_NEAR(prob(du, 2.0), 0.75, 1e-15);
  EXPECT_NEAR(prob(du, -2.0), 0.25, 1e-15);
}

TEST(BornDistribution, RejectsDimensionMismatch) {
  EXPECT_THROW(born_distribution(Pom::from_observable(z_obs()), DensityState::maximally_mixed(3)), DimensionError);
}

TEST(ApplyOperation, LudersProjection) {
  const Instrument t = luders(z_obs());
  const std::vector<double> up{1.0};
  EXPECT_LT(maxdiff(apply_operation(t, up, plus_state().matrix()), 0.5 * mat({{1, 0}, {0, 0}})), 1e-15);
}

TEST(ApplyOperation, TotalIsTracePreservingAndTraceMatchesProbability) {
  random::Engine rng(11);
  for (int i = 0; i < 20; ++i) {
    const Instrument t = random::instrument(rng, 3, 3, 2);
    const DensityState rho = random::state(rng, 3);
    EXPECT_NEAR(apply_total(t, rho.matrix()).trace().real(), 1.0, 1e-12);
    const Distribution d = born_distribution(associated_pom(t), rho);
    const std::vector<double> subset{t.outcomes()[0], t.outcomes()[2]};
    EXPECT_NEAR(apply_operation(t, subset, rho.matrix()).trace().real(), d.probs[0] + d.probs[2], 1e-12);
  }
}

TEST(ApplyOperation, MeasurePreparePreparesPsi0) {
  const Ket psi0 = equatorial_ket(std::numbers::pi / 6);
  const std::vector<double> up{1.0};
  const Op out = apply_operation(measure_prepare(z_obs(), psi0), up, zero_state().matrix());
  EXPECT_LT(maxdiff(out, outer(psi0)), 1e-15);
}

TEST(ApplyOperation, RejectsUnknownLabel) {
  const std::vector<double> bad{0.5};
  EXPECT_THROW(apply_operation(luders(z_obs()), bad, zero_state().matrix()), InvalidArgument);
}

TEST(AssociatedPom, Examples) {
  const Pom lz = associated_pom(luders(z_obs()));
  EXPECT_LT(maxdiff(lz.effects()[1], mat({{1, 0}, {0, 0}})), 1e-15);
  const Pom mp = associated_pom(measure_prepare(z_obs(), equatorial_ket(0.4)));
  EXPECT_LT(maxdiff(mp.effects()[0], mat({{0, 0}, {0, 1}})), 1e-15);
  EXPECT_LT(maxdiff(mp.effects()[1], mat({{1, 0}, {0, 0}})), 1e-15);
  const double eta = 0.3;
  const Pom us = associated_pom(unsharp(z_obs(), eta, false));
  EXPECT_LT(maxdiff(us.effects()[0], 0.5 * (eye(2) - eta * sz())), 1e-14);
  EXPECT_LT(maxdiff(us.effects()[1], 0.5 * (eye(2) + eta * sz())), 1e-14);
}

TEST(PosteriorFamily, LudersOnPlus) {
  const PosteriorFamily f = posterior_family(luders(z_obs()), plus_state());
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].outcome, -1.0);
  EXPECT_NEAR(f.entries[0].probability, 0.5, 1e-15);
  EXPECT_LT(maxdiff(f.entries[0].posterior->matrix(), mat({{0, 0}, {0, 1}})), 1e-14);
  EXPECT_LT(maxdiff(f.entries[1].posterior->matrix(), mat({{1, 0}, {0, 0}})), 1e-14);
}

TEST(PosteriorFamily, MeasurePrepareAlwaysYieldsPsi0) {
  random::Engine rng(12);
  const Ket psi0 = equatorial_ket(1.1);
  const PosteriorFamily f = posterior_family(measure_prepare(z_obs(), psi0), random::state(rng, 2));
  for (const PosteriorEntry& e : f.entries) EXPECT_LT(maxdiff(e.posterior->matrix(), outer(psi0)), 1e-12);
}

TEST(PosteriorFamily, ZeroProbabilityBranchIsNull) {
  const PosteriorFamily f = posterior_family(luders(z_obs()), zero_state());
  EXPECT_EQ(f.entries[0].probability, 0.0);
  EXPECT_FALSE(f.entries[0].posterior.has_value());
  EXPECT_NEAR(f.entries[1].probability, 1.0, 1e-15);
  EXPECT_LT(maxdiff(f.entries[1].posterior->matrix(), zero_state().matrix()), 1e-15);
}

TEST(PosteriorFamily, MixingIdentityOnRandomInstruments) {
  random::Engine rng(13);
  for (int i = 0; i < 30; ++i) {
    const int d = 2 + i % 3;
    const Instrument t = random::instrument(rng, d, 1 + i % 3, 2);
    const DensityState rho = random::state(rng, d);
    const PosteriorFamily f = posterior_family(t, rho);
    Op mix = Op::Zero(d, d);
    double total = 0.0;
    for (const PosteriorEntry& e : f.entries) {
      total += e.probability;
      if (e.posterior) mix += e.probability * e.posterior->matrix();
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_LT(maxdiff(mix, apply_total(t, rho.matrix())), 1e-9);
  }
}

TEST(SequentialDistribution, RepeatedLudersIsRepeatable) {
  const std::vector<Instrument> ts{luders(z_obs()), luders(z_obs())};
  const JointDistribution d = sequential_distribution(ts, plus_state());
  EXPECT_NEAR(prob(d, {1, 1}), 0.5, 1e-15);
  EXPECT_NEAR(prob(d, {-1, -1}), 0.5, 1e-15);
  EXPECT_NEAR(prob(d, {1, -1}), 0.0, 1e-15);
  EXPECT_NEAR(prob(d, {-1, 1}), 0.0, 1e-15);
}

TEST(SequentialDistribution, ZThenXRandomizesSecondOutcome) {
  const std::vector<Instrument> ts{luders(z_obs()), luders(x_obs())};
  const JointDistribution d = sequential_distribution(ts, zero_state());
  ASSERT_EQ(d.probs.size(), 4u);
  EXPECT_NEAR(prob(d, {1, 1}), 0.5, 1e-15);
  EXPECT_NEAR(prob(d, {1, -1}), 0.5, 1e-15);
  EXPECT_NEAR(prob(d, {-1, 1}), 0.0, 1e-15);
  EXPECT_NEAR(prob(d, {-1, -1}), 0.0, 1e-15);
}

TEST(SequentialDistribution, SingleInstrumentReducesToBorn) {
  random::Engine rng(14);
  for (int i = 0; i < 20; ++i) {
    const Instrument t = random::instrument(rng, 3, 3, 2);
    const DensityState rho = random::state(rng, 3);
    const std::vector<Instrument> ts{t};
    const JointDistribution seq = sequential_distribution(ts, rho);
    const Distribution born = born_distribution(associated_pom(t), rho);
    for (std::size_t k = 0; k < born.probs.size(); ++k) {
      EXPECT_EQ(seq.labels[k], std::vector<double>{born.labels[k]});
      EXPECT_NEAR(seq.probs[k], born.probs[k], 1e-12);
    }
  }
}

TEST(SequentialDistribution, RejectsMixedDimensions) {
  const std::vector<Instrument> ts{luders(z_obs()), luders(Observable::from_operator(eye(3)))};
  EXPECT_THROW(sequential_distribution(ts, zero_state()), DimensionError);
}

TEST(TimedSequentialDistribution, ZeroGapsAndZeroHamiltonianReduceToPlainSequence) {
  random::Engine rng(15);
  for (int i = 0; i < 10; ++i) {
    const std::vector<Instrument> ts{random::instrument(rng, 2, 2, 2), random::instrument(rng, 2, 3, 2)};
    const DensityState rho = random::state(rng, 2);
    const JointDistribution plain = sequential_distribution(ts, rho);
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> spread{0.4, 1.9};
    const JointDistribution gapless = timed_sequential_distribution(ts, zero, rotation_z_to_x(), rho);
    const JointDistribution frozen = timed_sequential_distribution(ts, spread, Hamiltonian::zero(2), rho);
    for (std::size_t k = 0; k < plain.probs.size(); ++k) {
      EXPECT_NEAR(gapless.probs[k], plain.probs[k], 1e-12);
      EXPECT_NEAR(frozen.probs[k], plain.probs[k], 1e-12);
    }
  }
}

TEST(TimedSequentialDistribution, RotationBetweenRepeatedZ) {
  // |0> gives +1 with certainty; the rotated posterior has <sigma_z> = 0.
  const std::vector<Instrument> ts{luders(z_obs()), luders(z_obs())};
  const std::vector<double> times{0.0, 1.0};
  const JointDistribution d = timed_sequential_distribution(ts, times, rotation_z_to_x(1.0), zero_state());
  EXPECT_NEAR(prob(d, {1, 1}), 0.5, 1e-12);
  EXPECT_NEAR(prob(d, {1, -1}), 0.5, 1e-12);
  EXPECT_NEAR(prob(d, {-1, 1}), 0.0, 1e-12);
  EXPECT_NEAR(prob(d, {-1, -1}), 0.0, 1e-12);
}

TEST(TimedSequentialDistribution, RejectsBadTimes) {
  const std::vector<Instrument> ts{luders(z_obs()), luders(z_obs())};
  const std::vector<double> decreasing{1.0, 0.5};
  const std::vector<double> negative{-0.1, 0.5};
  const std::vector<double> short_list{0.5};
  const Hamiltonian h = Hamiltonian::zero(2);
  EXPECT_THROW(timed_sequential_distribution(ts, decreasing, h, zero_state()), InvalidArgument);
  EXPECT_THROW(timed_sequential_distribution(ts, negative, h, zero_state()), InvalidArgument);
  EXPECT_THROW(timed_sequential_distribution(ts, short_list, h, zero_state()), InvalidArgument);
}

TEST(Evolve, TrivialCases) {
  random::Engine rng(16);
  const DensityState rho = random::state(rng, 2);
  EXPECT_LT(maxdiff(evolve(rho, rotation_z_to_x(), 0.0).matrix(), rho.matrix()), 1e-15);
  const DensityState diag = DensityState::from_matrix(mat({{0.3, 0}, {0, 0.7}}));
  EXPECT_LT(maxdiff(evolve(diag, Hamiltonian::from_matrix(2.0 * sz()), 0.8).matrix(), diag.matrix()), 1e-15);
}

TEST(Evolve, RotationMatchesClosedForm) {
  // H = -(pi / 4) sigma_y for tau = 1, so U = cos(pi/4) 1 + i sin(pi/4) sigma_y.
  const Op u = kR * eye(2) + kI * kR * sy();
  EXPECT_LT(maxdiff(u.adjoint() * sz() * u, sx()), 1e-15);
  const DensityState out = evolve(zero_state(), rotation_z_to_x(1.0), 1.0);
  EXPECT_LT(maxdiff(out.matrix(), u * zero_state().matrix() * u.adjoint()), 1e-14);
  EXPECT_NEAR(out.purity(), 1.0, 1e-14);
}

TEST(SchemeToInstrument, DecoupledProbeScalesTheState) {
  const DensityState sigma = DensityState::from_matrix(mat({{0.3, 0}, {0, 0.7}}));
  const MeasurementScheme s = MeasurementScheme::create(sigma, eye(4), {z_obs()});
  const Instrument t = scheme_to_instrument(s);
  random::Engine rng(17);
  const Op rho = random::state(rng, 2).matrix();
  EXPECT_LT(maxdiff(t.apply(*t.index_of(-1.0), rho), 0.7 * rho), 1e-14);
  EXPECT_LT(maxdiff(t.apply(*t.index_of(1.0), rho), 0.3 * rho), 1e-14);
}

TEST(SchemeToInstrument, CnotCouplingGivesLudersZ) {
  const Op cnot = mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const MeasurementScheme s = MeasurementScheme::create(DensityState::basis(2, 0), cnot, {z_obs()});
  EXPECT_LT(choi_distance(scheme_to_instrument(s), luders(z_obs())), 1e-12);
}

TEST(SchemeToInstrument, MatchesDirectPartialTraceOnRandomSchemes) {
  random::Engine rng(18);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 2;
    const int n = 2 + i % 3;
    const MeasurementScheme s = MeasurementScheme::create(
        random::state(rng, n), random::unitary(rng, d * n), {random::observable(rng, n, i % 2 == 0)});
    const Instrument t = scheme_to_instrument(s);
    const DensityState rho = random::state(rng, d);
    double total = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      EXPECT_LT(maxdiff(t.apply(k, rho.matrix()), scheme_map(s, k, rho.matrix())), 1e-10);
      total += t.apply(k, rho.matrix()).trace().real();
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(SchemeToInstrument, RejectsMultipleOrNonCommutingMeters) {
  const MeasurementScheme two = MeasurementScheme::create(DensityState::basis(2, 0), eye(4), {z_obs(), z_obs()});
  EXPECT_THROW(scheme_to_instrument(two), InvalidArgument);
  EXPECT_THROW(MeasurementScheme::create(DensityState::basis(2, 0), eye(4), {z_obs(), x_obs()}), CompatibilityError);
}

TEST(MeasurementScheme, RejectsNonUnitaryCoupling) {
  EXPECT_THROW(MeasurementScheme::create(DensityState::basis(2, 0), 2.0 * eye(4), {z_obs()}), InvalidArgument);
}

TEST(RealizeInstrument, NamedModelsRoundTrip) {
  for (const Instrument& t : {luders(z_obs()), measure_prepare(z_obs(), equatorial_ket(std::numbers::pi / 6)),
                              unsharp(z_obs(), 0.4, true)}) {
    const MeasurementScheme s = realize_instrument(t, 1);
    EXPECT_EQ(s.probe_dim(), std::max<int>(2, static_cast<int>(t.kraus_count())));
    EXPECT_NEAR(s.probe_state().purity(), 1.0, 1e-15);
    EXPECT_LT(maxdiff(s.coupling().adjoint() * s.coupling(), eye(2 * s.probe_dim())), 1e-12);
    EXPECT_LT(choi_distance(t, scheme_to_instrument(s)), 1e-9);
  }
}

TEST(RealizeInstrument, RandomInstrumentsRoundTrip) {
  random::Engine rng(19);
  for (int i = 0; i < 30; ++i) {
    const Instrument t = random::instrument(rng, 2 + i % 3, 1 + i % 3, 2);
    EXPECT_LT(choi_distance(t, scheme_to_instrument(realize_instrument(t, static_cast<std::uint64_t>(i)))), 1e-9);
  }
}

TEST(ChoiDistance, SeparatesDifferentMaps) {
  EXPECT_GT(choi_distance(luders(z_obs()), measure_prepare(z_obs(), ket({1, 0}))), 0.5);
  EXPECT_EQ(choi_distance(luders(z_obs()), luders(x_obs())) > 0.1, true);
  EXPECT_TRUE(std::isinf(choi_distance(luders(z_obs()), unsharp(z_obs(), 0.5, true))));
  // A Kraus set and its unitary mixture describe the same map.
  const Instrument a = Instrument::from_kraus({0.0}, {{kR * eye(2), kR * sz()}});
  const Instrument b = Instrument::from_kraus({0.0}, {{mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}})}});
  EXPECT_LT(choi_distance(a, b), 1e-15);
}

TEST(NaimarkDilate, ProjectiveAndUnsharpQubit) {
  const Pom z = Pom::from_observable(z_obs());
  const NaimarkDilation nz = naimark_dilate(z);
  const Op& v = nz.isometry.matrix();
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LT(maxdiff(v.adjoint() * nz.pvm.projectors()[k] * v, z.effects()[k]), 1e-15);
  }
  const Pom u = associated_pom(unsharp(z_obs(), 0.5, true));
  const NaimarkDilation nu = naimark_dilate(u);
  ASSERT_EQ(nu.isometry.out_dim(), 4);
  const Op& w = nu.isometry.matrix();
  EXPECT_LT(maxdiff(w.adjoint() * nu.pvm.projectors()[0] * w, 0.5 * (eye(2) - 0.5 * sz())), 1e-10);
  EXPECT_LT(maxdiff(w.adjoint() * nu.pvm.projectors()[1] * w, 0.5 * (eye(2) + 0.5 * sz())), 1e-10);
}

TEST(NaimarkDilate, RandomPoms) {
  random::Engine rng(20);
  for (int i = 0; i < 40; ++i) {
    const int d = 2 + i % 2;
    const Pom x = random::pom(rng, d, 2 + i % 3);
    const NaimarkDilation nd = naimark_dilate(x);
    const Op& v = nd.isometry.matrix();
    EXPECT_EQ(nd.isometry.out_dim(), d * static_cast<int>(x.size()));
    EXPECT_LT(maxdiff(v.adjoint() * v, eye(d)), 1e-10);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto at = std::find(nd.pvm.outcomes().begin(), nd.pvm.outcomes().end(), x.outcomes()[k]);
      const Op& p = nd.pvm.projectors()[static_cast<std::size_t>(at - nd.pvm.outcomes().begin())];
      EXPECT_LT(maxdiff(v.adjoint() * p * v, x.effects()[k]), 1e-10);
    }
  }
}

TEST(Validation, RejectsMalformedObjects) {
  EXPECT_THROW(DensityState::from_matrix(eye(2)), InvalidArgument);
  EXPECT_THROW(DensityState::from_matrix(mat({{1.5, 0}, {0, -0.5}})), InvalidArgument);
  EXPECT_THROW(DensityState::from_matrix(mat({{0.5, 1}, {0, 0.5}})), InvalidArgument);
  EXPECT_THROW(DensityState::pure(ket({1, 1})), InvalidArgument);
  EXPECT_THROW(Observable::from_projectors({1.0, -1.0}, {mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}})}),
               InvalidArgument);
  EXPECT_THROW(Pom::from_effects({1.0, 2.0}, {0.5 * eye(2), 0.4 * eye(2)}), InvalidArgument);
  EXPECT_THROW(Pom::from_effects({1.0, 1.0}, {0.5 * eye(2), 0.5 * eye(2)}), InvalidArgument);
  EXPECT_THROW(Pom::from_effects({1.0, 2.0}, {1.5 * eye(2), -0.5 * eye(2)}), InvalidArgument);
  EXPECT_THROW(Instrument::from_kraus({1.0}, {{0.9 * eye(2)}}), InvalidArgument);
  EXPECT_THROW(Instrument::from_kraus({1.0, 2.0}, {{eye(2)}, {}}), InvalidArgument);
}

}  // namespace
