// Copyright 2026 The Orbitgame Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "orbit/open_access.hpp"
#include "orbit/oracle.hpp"
#include "orbit/regulation.hpp"
#include "orbit/sampling.hpp"
#include "orbit/treaty.hpp"
#include "support.hpp"

using namespace orbit;

namespace {

constexpr double kClosedBeta = 5.0 / 756.0;

BenefitCoefficients model_sym2() {
  const Scenario s = Scenario::sym2();
  return benefit_coefficients(s, TaxSchedule::zeros(s), 0, CoefficientVariant::kModelDerived);
}

BenefitCoefficients closed_sym2() {
  const Scenario s = Scenario::sym2();
  return benefit_coefficients(s, TaxSchedule::zeros(s), 0, CoefficientVariant::kClosedForm);
}

bool lists(const TreatyAnalysis& a, double q) {
  for (const auto& p : a.nash_equilibria) {
    bool all = true;
    for (double v : p.contributions) all = all && std::abs(v - q) < 1e-12;
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("treaty") {

TEST_CASE("benefit coefficients on SYM2") {
  const auto m = model_sym2();
  CHECK(std::abs(m.alpha - 20.0 / 49.0) < 1e-9);
  CHECK(std::abs(m.beta + 2.0 / 49.0) < 1e-9);
  CHECK(m.fit_residual < 1e-10);
  const auto p = closed_sym2();
  CHECK(std::abs(p.alpha - 125.0 / 630.0) < 1e-12);
  CHECK(std::abs(p.beta - kClosedBeta) < 1e-12);

  // dW_1/dQ at Q = 0 by central differences of the welfare oracle.
  const Scenario s = Scenario::sym2();
  const std::vector<double> q0 = {0.0};
  const double slope = oracle::finite_difference(
      [&](std::span<const double> q) {
        return national_welfare(s, TaxSchedule::zeros(s),
                                solve_equilibrium(s, TaxSchedule::zeros(s), q[0], SolveOptions{false}))
            .welfare[0];
      },
      q0, 0);
  CHECK(std::abs(slope - 20.0 / 49.0) < 1e-7);
}

TEST_CASE("abatement is worthless without collision risk") {
  Scenario s = Scenario::sym2();
  s.collision_coeff = 0.0;
  for (auto v : {CoefficientVariant::kModelDerived, CoefficientVariant::kClosedForm}) {
    const auto b = benefit_coefficients(s, TaxSchedule::zeros(s), 1, v);
    CHECK(std::abs(b.alpha) < 1e-12);
    CHECK(std::abs(b.beta) < 1e-12);
  }
}

TEST_CASE("coefficient divergence report") {
  const Scenario s = Scenario::sym2();
  const auto div = coefficient_divergence(s, TaxSchedule::zeros(s));
  REQUIRE(div.size() == 2);
  for (const auto& d : div) {
    CHECK(d.diverges);
    CHECK(std::abs(d.model.alpha - 20.0 / 49.0) < 1e-9);
    CHECK(std::abs(d.closed.alpha - 125.0 / 630.0) < 1e-9);
    CHECK(std::abs(d.model.beta + 2.0 / 49.0) < 1e-9);
    CHECK(std::abs(d.closed.beta - kClosedBeta) < 1e-9);
    CHECK(d.alpha_gap == doctest::Approx(d.closed.alpha - d.model.alpha));
  }
}

TEST_CASE("abatement payoff") {
  const Scenario s = Scenario::sym2();
  const auto m = model_sym2();
  CHECK(abatement_payoff(s, m, 0.6, 1.2, 1.2) == doctest::Approx(0.277143).epsilon(1e-6));
  CHECK(abatement_payoff(s, m, 0.0, 0.0, 1.2) == doctest::Approx(m.alpha - 1.0));
  CHECK(abatement_payoff(s, m, 0.0, 1.2, 1.2) == m.marginal_benefit(1.2));
  // Equal shares that round below qbar still avert.
  CHECK(averts(0.4 + 0.4 + 0.4, 1.2));
  CHECK_FALSE(averts(1.1999, 1.2));
}

TEST_CASE("Nash listing on SYM2") {
  const Scenario s = Scenario::sym2();
  const TaxSchedule t = TaxSchedule::zeros(s);
  const auto model = nash_abatement(s, t, CoefficientVariant::kModelDerived);
  CHECK(std::abs(model.qbar - 1.2) < 1e-12);
  CHECK(model.parties[0].pivot_rhs == doctest::Approx(0.155510).epsilon(1e-5));
  CHECK(lists(model, 0.6));
  const auto closed = nash_abatement(s, t, CoefficientVariant::kClosedForm);
  CHECK(closed.parties[0].pivot_rhs == doctest::Approx(0.183968).epsilon(1e-5));
  CHECK(lists(closed, 0.6));
  // Averting alone costs 0.72 + beta * 1.2, below X = 1, so nobody stays at zero.
  CHECK_FALSE(lists(model, 0.0));
  CHECK_FALSE(lists(closed, 0.0));
  CHECK_FALSE(model.rejected_profiles.empty());

  Scenario cheap = s;
  cheap.catastrophe_damages = 0.01;
  const auto low = nash_abatement(cheap, t, CoefficientVariant::kClosedForm);
  CHECK(lists(low, 0.0));
  CHECK_FALSE(lists(low, 0.6));
  // With beta < 0 a small non-averting contribution beats doing nothing.
  const auto low_model = nash_abatement(cheap, t, CoefficientVariant::kModelDerived);
  CHECK(low_model.nash_equilibria.empty());
}

TEST_CASE("listed profiles survive the exhaustive deviation scan") {
  const Scenario s = Scenario::sym2();
  const auto m = model_sym2();
  const std::vector<oracle::LinearBenefit> lines = {{m.alpha, m.beta}, {m.alpha, m.beta}};
  const auto sym = oracle::deviation_search_abatement(s, lines, AbatementProfile::from({0.6, 0.6}), 1.2, 1e-3);
  CHECK(sym.passed);
  // Averting alone costs 0.72 + beta * 1.2 < X, so the lopsided profile holds.
  const auto lop = oracle::deviation_search_abatement(s, lines, AbatementProfile::from({1.2, 0.0}), 1.2, 1e-3);
  CHECK(lop.passed);
  Scenario mild = s;
  mild.catastrophe_damages = 0.5;
  const auto drop = oracle::deviation_search_abatement(mild, lines, AbatementProfile::from({1.2, 0.0}), 1.2, 1e-3);
  CHECK_FALSE(drop.passed);
  const auto zero = oracle::deviation_search_abatement(s, lines, AbatementProfile::from({0.0, 0.0}), 1.2, 1e-3);
  CHECK_FALSE(zero.passed);
  std::vector<BenefitCoefficients> both = {m, m};
  CHECK(is_nash(s, both, AbatementProfile::from({0.6, 0.6}), 1.2));
  CHECK(is_nash(s, both, AbatementProfile::from({1.2, 0.0}), 1.2));
  CHECK_FALSE(is_nash(mild, both, AbatementProfile::from({1.2, 0.0}), 1.2));
}

TEST_CASE("treaty response after a defection") {
  const Scenario s = Scenario::sym2();
  const auto rm = treaty_response(s, model_sym2(), 1.2);
  CHECK(rm.raw == doctest::Approx(-0.255617).epsilon(1e-5));
  CHECK(rm.clamped);
  CHECK(rm.q_rest == 0.0);
  const auto rp = treaty_response(s, closed_sym2(), 1.2);
  CHECK(rp.raw == doctest::Approx(-0.207611).epsilon(1e-5));
  CHECK(rp.q_rest == 0.0);

  // Independent root of (c/2) x^2 + beta x - X = 0 by bisection.
  const auto m = model_sym2();
  const double x = oracle::bisect_root(
      [&](double y) { return 0.5 * y * y + m.beta * y - 1.0; }, 0.0, 10.0);
  CHECK(std::abs(rm.raw - (1.2 - x)) < 1e-12);

  Scenario free = s;
  free.catastrophe_damages = 0.0;
  for (const double beta : {0.3, -0.3}) {
    BenefitCoefficients b;
    b.alpha = 1.0;
    b.beta = beta;
    const auto r = treaty_response(free, b, 1.2);
    CHECK(std::abs(r.raw - (1.2 + (beta - std::abs(beta)))) < 1e-15);
  }
}

TEST_CASE("self-enforcement") {
  const Scenario s = Scenario::sym2();
  const TaxSchedule t = TaxSchedule::zeros(s);
  const auto model = self_enforcing_check(s, t, CoefficientVariant::kModelDerived);
  CHECK(model.self_enforcing);
  CHECK(model.parties[0].punishment_bound == doctest::Approx(1.455617).epsilon(1e-5));
  const auto closed = self_enforcing_check(s, t, CoefficientVariant::kClosedForm);
  CHECK(closed.self_enforcing);
  CHECK(closed.parties[0].punishment_bound == doctest::Approx(1.407611).epsilon(1e-5));
  Scenario dear = s;
  dear.abatement_cost = 100.0;
  CHECK_FALSE(self_enforcing_check(dear, t, CoefficientVariant::kModelDerived).self_enforcing);
}

TEST_CASE("closed-form beta sensitivity on SYM2") {
  const Scenario s = Scenario::sym2();
  const auto rep = beta_sensitivity(s, TaxSchedule::zeros(s), 0, 1);
  CHECK(rep.beta == doctest::Approx(kClosedBeta));
  REQUIRE(rep.entries.size() == 5);
  for (const auto& e : rep.entries) {
    CAPTURE(e.parameter);
    const bool own = e.parameter == "tau_ii" || e.parameter == "tau_ij" || e.parameter == "m_i";
    // Taxes on the rival sector raise beta_i: it falls in the rival's capacity.
    if (own) CHECK(e.finite_difference < 0.0);
    else CHECK(e.finite_difference > 0.0);
  }
  CHECK_FALSE(rep.all_negative());

  Scenario flat = s;
  flat.collision_coeff = 0.0;
  for (const auto& e : beta_sensitivity(flat, TaxSchedule::zeros(flat), 0, 1).entries) {
    CHECK(e.finite_difference == 0.0);
  }
}

TEST_CASE("treaty support slopes") {
  const Scenario s = Scenario::sym2();
  const auto sup = treaty_support_check(s, TaxSchedule::zeros(s), 0, 1);
  CHECK(sup.aversion_slope < 0.0);
  CHECK(sup.side_condition);
  CHECK(sup.defection_slope > 0.0);

  Scenario flat = s;
  flat.collision_coeff = 0.0;
  flat.catastrophe_threshold = 10.0;
  const auto none = treaty_support_check(flat, TaxSchedule::zeros(flat), 0, 1);
  CHECK(none.aversion_slope == 0.0);
  CHECK(none.defection_slope == 0.0);
  // With abatement still required, fleets move qbar even without collisions.
  flat.catastrophe_threshold = 2.0;
  CHECK(treaty_support_check(flat, TaxSchedule::zeros(flat), 0, 1).aversion_slope != 0.0);
}

TEST_CASE("property: welfare is quadratic in abatement and fits are exact") {
  ScenarioSampler sampler(5);
  for (int n = 0; n < 100; ++n) {
    const auto c = sampler.next();
    const Scenario& s = c.scenario;
    std::vector<std::vector<double>> w;
    for (int k = 0; k < 5; ++k) {
      w.push_back(national_welfare(s, c.taxes, solve_equilibrium(s, c.taxes, 0.5 * k, SolveOptions{false}))
                      .welfare);
    }
    for (std::size_t j = 0; j < s.n_markets; ++j) {
      const double d0 = w[0][j] - 2 * w[1][j] + w[2][j];
      const double d1 = w[1][j] - 2 * w[2][j] + w[3][j];
      const double d2 = w[2][j] - 2 * w[3][j] + w[4][j];
      CHECK(std::abs(d1 - d0) < 1e-10);
      CHECK(std::abs(d2 - d0) < 1e-10);
    }
    for (const auto& b : party_coefficients(s, c.taxes, CoefficientVariant::kModelDerived)) {
      CHECK(b.fit_residual < 1e-10);
    }
  }
}

TEST_CASE("property: unclamped responses sit on the indifference curve") {
  ScenarioSampler sampler(6);
  int unclamped = 0;
  for (int n = 0; n < 200; ++n) {
    const auto c = sampler.next();
    const Scenario& s = c.scenario;
    for (auto v : {CoefficientVariant::kModelDerived, CoefficientVariant::kClosedForm}) {
      const auto a = nash_abatement(s, c.taxes, v);
      for (const auto& p : a.parties) {
        if (p.response.clamped) continue;
        ++unclamped;
        const double q = p.response.q_rest;
        const double gap = p.coeffs.marginal_benefit(a.qbar) -
                           0.5 * s.abatement_cost * (a.qbar - q) * (a.qbar - q) -
                           p.coeffs.marginal_benefit(q) + s.catastrophe_damages;
        CHECK(std::abs(gap) < 1e-9);
      }
    }
  }
  CHECK(unclamped > 0);
}

}  // TEST_SUITE
