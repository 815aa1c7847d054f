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
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qmeter/dilation.hpp"
#include "qmeter/joint.hpp"
#include "qmeter/measurement.hpp"
#include "qmeter/metrics.hpp"
#include "qmeter/models.hpp"
#include "qmeter/operator.hpp"
#include "qmeter/random.hpp"
#include "qmeter/repeated.hpp"

namespace {

using namespace qmeter;
using Clock = std::chrono::steady_clock;

const Complex kI{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

Op sx() { return (Op(2, 2) << 0, 1, 1, 0).finished(); }
Op sy() { return (Op(2, 2) << 0, -kI, kI, 0).finished(); }
Op sz() { return (Op(2, 2) << 1, 0, 0, -1).finished(); }
Op id(int d) { return Op::Identity(d, d); }

double re_trace(const Op& a, const Op& rho) { return (a * rho).trace().real(); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Variance of a POM's outcome and of an operator, both by direct summation.
double pom_variance(const std::vector<double>& xs, const std::vector<Op>& es, const Op& rho) {
  double m1 = 0, m2 = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double p = re_trace(es[k], rho);
    m1 += xs[k] * p;
    m2 += xs[k] * xs[k] * p;
  }
  return std::max(0.0, m2 - m1 * m1);
}

double op_variance(const Op& a, const Op& rho) {
  const double m = re_trace(a, rho);
  return std::max(0.0, re_trace(a * a, rho) - m * m);
}

Outcome criterion1() {
  const std::vector<double> xs{2.0, -2.0};
  Op ep = Op::Zero(2, 2), em = Op::Zero(2, 2);
  ep.diagonal() << 0.75, 0.25;
  em.diagonal() << 0.25, 0.75;
  Op p_up = Op::Zero(2, 2), p_down = Op::Zero(2, 2);
  p_up(0, 0) = 1;
  p_down(1, 1) = 1;
  Op rho = Op::Zero(2, 2);
  rho(0, 0) = 1;
  // Sum of (x - a)^2 Tr[E_x P_a rho] over the compatible joint distribution.
  double direct = 0.0;
  const std::vector<Op> es{ep, em};
  const std::vector<std::pair<double, Op>> ps{{1.0, p_up}, {-1.0, p_down}};
  for (std::size_t k = 0; k < 2; ++k) {
    for (const auto& [a, p] : ps) direct += (xs[k] - a) * (xs[k] - a) * re_trace(es[k] * p, rho);
  }
  const double difference = pom_variance(xs, es, rho) - op_variance(sz(), rho);

  const Observable z = Observable::from_operator(sz());
  const Pom x = associated_pom(unsharp(z, 0.5, true));
  const DensityState zero = DensityState::pure((Ket(2) << 1, 0).finished());
  const double lib = std::pow(precision(x, z, zero), 2);
  const PrecisionDecomposition dec = precision_decomposition(x, z, zero);
  const double lib_diff = dec.pom_variance - dec.operator_variance;

  const double err = std::max({std::abs(direct - 3.0), std::abs(difference - 3.0), std::abs(direct - difference),
                               std::abs(lib - direct), std::abs(lib_diff - difference)});
  return {err <= 1e-10, fmt("eps^2 direct=%.12g variance_difference=%.12g library=%.12g max_err=%.2g", direct,
                            difference, lib, err)};
}

Outcome criterion2() {
  const double s = std::sqrt(2.0);
  Op rho = Op::Zero(2, 2);
  rho(0, 0) = 1;
  // Grid oracle: M_xy = (1 + (x/s^2) sigma_x + (y/s^2) sigma_y)/4.
  double eps_a = 0, eps_b = 0, mx = 0, mx2 = 0, my = 0, my2 = 0;
  const Op px[2] = {(id(2) + sx()) / 2.0, (id(2) - sx()) / 2.0};
  const Op py[2] = {(id(2) + sy()) / 2.0, (id(2) - sy()) / 2.0};
  const double sign[2] = {1.0, -1.0};
  for (double x : {s, -s}) {
    for (double y : {s, -s}) {
      const Op m = (id(2) + (x / 2.0) * sx() + (y / 2.0) * sy()) / 4.0;
      const double p = re_trace(m, rho);
      mx += x * p;
      mx2 += x * x * p;
      my += y * p;
      my2 += y * y * p;
      for (int i = 0; i < 2; ++i) {
        eps_a += (x - sign[i]) * (x - sign[i]) * re_trace(m * px[i], rho);
        eps_b += (y - sign[i]) * (y - sign[i]) * re_trace(m * py[i], rho);
      }
    }
  }
  const double ea = std::sqrt(eps_a), eb = std::sqrt(eps_b);
  const double dx = std::sqrt(mx2 - mx * mx), dy = std::sqrt(my2 - my * my);
  const double c = std::abs(((sx() * sy() - sy() * sx()) * rho).trace());

  const JointUncertaintyReport r =
      joint_uncertainty_report(jxy_joint_pom(), Observable::from_operator(sx()), Observable::from_operator(sy()),
                               DensityState::from_matrix(rho));
  double err = std::max({std::abs(ea - 1), std::abs(eb - 1), std::abs(dx - s), std::abs(dy - s), std::abs(c - 2)});
  err = std::max({err, std::abs(ea * eb - c / 2), std::abs(dx * dy - c)});
  err = std::max({err, std::abs(r.epsilon_a - ea), std::abs(r.epsilon_b - eb), std::abs(r.delta_x - dx),
                  std::abs(r.delta_y - dy), std::abs(r.commutator - c)});
  const bool ok = err <= 1e-9 && r.check1 && r.check2;
  return {ok, fmt("eps_a=%.12g dx=%.12g c=%.12g max_err=%.2g", r.epsilon_a, r.delta_x, r.commutator, err)};
}

Outcome criterion3() {
  const double delta = std::numbers::pi / 6;
  const Ket psi0 = (Ket(2) << std::sqrt(0.5), std::sqrt(0.5) * std::exp(kI * delta)).finished();
  const Observable z = Observable::from_operator(sz());
  const SqlReport r = sql_report(measure_prepare(z, psi0), z, rotation_z_to_x(), 1.0, DensityState::maximally_mixed(2));
  const double err = std::max({std::abs(r.sigma - std::sqrt(2.0)), std::abs(r.epsilon_after), std::abs(r.delta_sq - 0.25),
                               std::abs(r.rhs - 1.0)});
  const bool ok = err <= 1e-9 && !r.condition_holds && r.delta_sq < r.rhs && !r.sql_holds;
  return {ok, fmt("sigma=%.12g eps_after=%.3g delta_sq=%.12g rhs=%.12g", r.sigma, r.epsilon_after, r.delta_sq, r.rhs)};
}

// Instrument pool shared by criteria 4, 5 and 8.
struct SqlCase {
  Instrument t;
  Observable a;
  DensityState rho;
};
std::vector<SqlCase> g_sql_pool;
std::vector<std::pair<Instrument, DensityState>> g_realize_pool;

// Resolution squared by direct summation over posteriors built from Kraus sets.
double resolution_sq_oracle(const Instrument& t, const Op& a, const Op& rho) {
  double total = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    Op post = Op::Zero(rho.rows(), rho.cols());
    for (const Op& kr : t.kraus_sets()[k]) post += kr * rho * kr.adjoint();
    const double p = post.trace().real();
    if (p <= 1e-12) continue;
    const Op shifted = a - t.outcomes()[k] * id(static_cast<int>(a.rows()));
    total += re_trace(shifted * shifted, post);
  }
  return total;
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  random::Engine rng(2024);
  int generated = 0, kept = 0, failures = 0, nontrivial = 0;
  double worst = 0.0, worst_sigma = 0.0;
  while (kept < 200 && generated < 20000) {
    ++generated;
    const int d = 2 + static_cast<int>(rng() % 3);
    const Observable a = random::observable(rng, d, rng() % 2 == 0);
    if (a.size() < 2) continue;
    const Instrument t = random::unbiased_compatible_instrument(rng, a, 2 + static_cast<int>(rng() % 3));
    const Hamiltonian h = Hamiltonian::from_matrix(random::hermitian(rng, d));
    const double tau = 0.05 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const DensityState rho = random::state(rng, d);
    const SqlReport r = sql_report(t, a, h, tau, rho);
    worst_sigma = std::max(worst_sigma, std::abs(r.sigma * r.sigma - resolution_sq_oracle(t, a.matrix(), rho.matrix())));
    if (!(r.sigma <= r.epsilon_after + 1e-12)) continue;
    ++kept;
    g_sql_pool.push_back({t, a, rho});
    if (r.rhs > 1e-6) ++nontrivial;
    if (!(r.delta_sq >= r.rhs - 1e-9)) ++failures;
    worst = std::max(worst, r.rhs - r.delta_sq);
  }
  const double secs = seconds_since(t0);
  const bool ok = kept >= 200 && failures == 0 && secs <= 60.0 && worst_sigma <= 1e-9;
  return {ok, fmt("kept=%.0f of %.0f generated, failures=%.0f, runtime=%.2fs", kept, generated, failures, secs) +
                  fmt(" nonzero_bound=%.0f max_rhs_excess=%.3g", nontrivial, worst)};
}

Op choi_oracle(const Instrument& t, std::size_t k) {
  const int d = t.dim();
  Op c = Op::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Op eij = Op::Zero(d, d);
      eij(i, j) = 1;
      Op img = Op::Zero(d, d);
      for (const Op& kr : t.kraus_sets()[k]) img += kr * eij * kr.adjoint();
      c.block(i * d, j * d, d, d) = img;
    }
  }
  return c;
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  random::Engine rng(99);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Instrument t = random::instrument(rng, d, 1 + static_cast<int>(rng() % 3), 2);
    const Instrument back = scheme_to_instrument(realize_instrument(t, static_cast<std::uint64_t>(i)));
    double err = back.size() == t.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; k < t.size() && err < 1.0; ++k) {
      const auto j = back.index_of(t.outcomes()[k]);
      err = j ? std::max(err, (choi_oracle(t, k) - choi_oracle(back, *j)).norm()) : 1.0;
    }
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) ++failures;
    g_realize_pool.emplace_back(t, random::state(rng, d));
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs <= 60.0,
          fmt("instruments=100 failures=%.0f max_choi_distance=%.3g runtime=%.2fs", failures, worst, secs)};
}

Outcome criterion6() {
  random::Engine rng(606);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const Pom x = random::pom(rng, d, 1 + static_cast<int>(rng() % 4));
    const NaimarkDilation nd = naimark_dilate(x);
    const Op& v = nd.isometry.matrix();
    double err = (v.adjoint() * v - id(d)).cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < x.size(); ++k) {
      Op p = Op::Zero(v.rows(), v.rows());
      for (std::size_t j = 0; j < nd.pvm.size(); ++j) {
        if (nd.pvm.outcomes()[j] == x.outcomes()[k]) p += nd.pvm.projectors()[j];
      }
      err = std::max(err, (v.adjoint() * p * v - x.effects()[k]).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, err);
    if (!(err <= 1e-10)) ++failures;
  }
  return {failures == 0, fmt("poms=200 failures=%.0f max_error=%.3g", failures, worst)};
}

Outcome criterion7() {
  random::Engine rng(777);
  int rob_fail = 0, hol_fail = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const Observable a = random::observable(rng, d, rng() % 2 == 0);
    const Observable b = random::observable(rng, d, rng() % 2 == 0);
    const DensityState rho = random::state(rng, d);
    const Op& m = rho.matrix();
    const double lhs = std::sqrt(op_variance(a.matrix(), m) * op_variance(b.matrix(), m));
    const double rhs = std::abs(((a.matrix() * b.matrix() - b.matrix() * a.matrix()) * m).trace()) / 2;
    const UncertaintyCheck c = robertson_check(a, b, rho);
    worst = std::max({worst, std::abs(c.lhs * c.lhs - lhs * lhs), std::abs(c.rhs - rhs)});
    if (!(lhs >= rhs - 1e-12) || !c.holds) ++rob_fail;
  }
  for (int i = 0; i < 1000; ++i) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Pom x = random::pom(rng, d, 2 + static_cast<int>(rng() % 3));
    const Pom y = random::pom(rng, d, 2 + static_cast<int>(rng() % 3));
    const DensityState rho = random::state(rng, d);
    const Op& m = rho.matrix();
    Op xm = Op::Zero(d, d), ym = Op::Zero(d, d);
    for (std::size_t k = 0; k < x.size(); ++k) xm += x.outcomes()[k] * x.effects()[k];
    for (std::size_t k = 0; k < y.size(); ++k) ym += y.outcomes()[k] * y.effects()[k];
    const double lhs = std::sqrt(pom_variance(x.outcomes(), x.effects(), m) * pom_variance(y.outcomes(), y.effects(), m));
    const double rhs = std::abs(((xm * ym - ym * xm) * m).trace()) / 2;
    const UncertaintyCheck c = holevo_check(x, y, rho);
    worst = std::max({worst, std::abs(c.lhs * c.lhs - lhs * lhs), std::abs(c.rhs - rhs)});
    if (!(lhs >= rhs - 1e-12) || !c.holds) ++hol_fail;
  }
  const DensityState zero = DensityState::pure((Ket(2) << 1, 0).finished());
  const Observable ox = Observable::from_operator(sx()), oy = Observable::from_operator(sy());
  const UncertaintyCheck rs = robertson_check(ox, oy, zero);
  const UncertaintyCheck hs = holevo_check(Pom::from_observable(ox), Pom::from_observable(oy), zero);
  const double sat = std::max({std::abs(rs.lhs - 1), std::abs(rs.rhs - 1), std::abs(hs.lhs - 1), std::abs(hs.rhs - 1)});
  const bool ok = rob_fail == 0 && hol_fail == 0 && worst <= 1e-9 && sat <= 1e-12;
  return {ok, fmt("robertson_violations=%.0f holevo_violations=%.0f oracle_gap=%.3g saturation_err=%.3g", rob_fail,
                  hol_fail, worst, sat)};
}

Outcome criterion8() {
  double mix = 0.0, dec_err = 0.0;
  int n = 0;
  auto check = [&](const Instrument& t, const Observable* a, const DensityState& rho) {
    const Op& m = rho.matrix();
    Op total = Op::Zero(m.rows(), m.cols());
    for (std::size_t k = 0; k < t.size(); ++k) {
      for (const Op& kr : t.kraus_sets()[k]) total += kr * m * kr.adjoint();
    }
    Op mixed = Op::Zero(m.rows(), m.cols());
    for (const PosteriorEntry& e : posterior_family(t, rho).entries) {
      if (e.posterior) mixed += e.probability * e.posterior->matrix();
    }
    mix = std::max(mix, (mixed - total).cwiseAbs().maxCoeff());
    if (a != nullptr) {
      const ResolutionDecomposition d = resolution_decomposition(t, *a, rho);
      const double oracle = resolution_sq_oracle(t, a->matrix(), m);
      dec_err = std::max({dec_err, std::abs(d.total() - oracle), std::abs(std::pow(resolution(t, *a, rho), 2) - oracle)});
    }
    ++n;
  };
  for (const SqlCase& c : g_sql_pool) check(c.t, &c.a, c.rho);
  random::Engine rng(808);
  for (const auto& [t, rho] : g_realize_pool) {
    const Observable a = random::observable(rng, t.dim(), false);
    check(t, &a, rho);
  }
  const bool ok = n >= 300 && mix <= 1e-9 && dec_err <= 1e-9;
  return {ok, fmt("instruments=%.0f max_mixing_error=%.3g max_decomposition_error=%.3g", n, mix, dec_err)};
}

Outcome criterion9() {
  random::Engine rng(909);
  int disagreements = 0, wrong = 0, diagonal_cases = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const std::vector<double> xs = random::labels(rng, n);
    const bool diagonal = i % 2 == 0;
    diagonal_cases += diagonal ? 1 : 0;
    const JointDistribution mu = random::grid_measure(rng, xs, xs, diagonal);
    const DiagonalSupport s = diagonal_support_test(mu);
    if (s.by_moment != s.by_marginals) ++disagreements;
    if (s.by_moment != diagonal) ++wrong;
  }
  return {disagreements == 0 && wrong == 0,
          fmt("measures=100 diagonal=%.0f disagreements=%.0f misclassified=%.0f", diagonal_cases, disagreements, wrong)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  const std::string cfg = std::string(QMETER_TEST_DATA) + "/sql_measure_prepare.json";
  const char* tmp = std::getenv("TMPDIR");
  const std::string dir = tmp != nullptr ? tmp : "/tmp";
  std::string outs[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    outs[i] = dir + "/qmeter_acceptance_" + std::to_string(i) + ".json";
    const std::string cmd = std::string("'") + QMETER_BINARY + "' run --config '" + cfg + "' --out '" + outs[i] +
                            "' --format json";
    const int status = std::system(cmd.c_str());
    codes[i] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  const std::string a = slurp(outs[0]), b = slurp(outs[1]);
  const bool ok = codes[0] == 0 && codes[1] == 0 && !a.empty() && a == b;
  return {ok, fmt("exit_codes=%.0f,%.0f bytes=%.0f identical=%.0f", codes[0], codes[1], static_cast<double>(a.size()),
                  a == b ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"precision identity, unsharp sigma_z", criterion1},
      {"joint bounds saturated by JXY", criterion2},
      {"measure-and-prepare beats the limit", criterion3},
      {"limit holds when resolution <= precision", criterion4},
      {"realization round trip", criterion5},
      {"Naimark dilation", criterion6},
      {"Robertson and Holevo suites", criterion7},
      {"posterior mixing and resolution decomposition", criterion8},
      {"diagonal support criteria agree", criterion9},
      {"byte-identical reruns", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
