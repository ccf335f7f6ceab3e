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
#include "orbit/sampling.hpp"
#include "support.hpp"

using namespace orbit;
using orbit::testing::error_code_of;
using orbit::testing::three_sector;

namespace {

TaxSchedule denied(const Scenario& s, std::size_t sector) {
  TaxSchedule t = TaxSchedule::zeros(s);
  for (std::size_t j = 0; j < s.n_markets; ++j) t(sector, j) = 1.0;
  return t;
}

}  // namespace

TEST_SUITE("open_access") {

TEST_CASE("best-response coefficients on SYM2") {
  const Scenario s = Scenario::sym2();
  const auto sys = assemble_system(s, TaxSchedule::zeros(s), 0.0);
  for (int i = 0; i < 2; ++i) {
    CHECK(sys.intercepts[i] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(sys.slopes[i] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  }
  CHECK(sys.determinant == doctest::Approx(35.0 / 36.0).epsilon(1e-15));

  const auto none = assemble_system(s, denied(s, 0), 0.0);
  CHECK(none.intercepts[0] == 0.0);
  CHECK(none.slopes[0] == 0.0);

  const auto solo = assemble_system(Scenario::solo(), TaxSchedule(1, 1), 0.0);
  CHECK(solo.intercepts[0] == 1.0);
  CHECK(solo.slopes[0] == 0.0);
  CHECK(solo.determinant == 1.0);
}

TEST_CASE("equilibrium fleets") {
  const Scenario s = Scenario::sym2();
  const auto eq = solve_equilibrium(s, TaxSchedule::zeros(s), 0.0);
  CHECK(std::abs(eq.fleets[0] - 10.0 / 7.0) < 1e-12);
  CHECK(std::abs(eq.fleets[1] - 10.0 / 7.0) < 1e-12);
  CHECK(std::abs(eq.debris.stock - 20.0 / 7.0) < 1e-12);
  CHECK(eq.diagnostics.max_profit_residual < 1e-12);

  const auto solo = solve_equilibrium(Scenario::solo(), TaxSchedule(1, 1), 0.0);
  CHECK(solo.fleets[0] == 1.0);
  CHECK(solo.debris.stock == 1.0);

  const auto shut = solve_equilibrium(s, denied(s, 0), 0.0);
  CHECK(shut.fleets[0] == 0.0);
  CHECK_FALSE(shut.active[0]);
  CHECK(std::abs(shut.fleets[1] - 5.0 / 3.0) < 1e-12);
  CHECK(std::abs(shut.debris.stock - 5.0 / 3.0) < 1e-12);
}

TEST_CASE("the iteration oracle agrees with the dense solve") {
  const Scenario s = Scenario::sym2();
  const auto it = oracle::iterate_open_access(s, TaxSchedule::zeros(s), 0.0);
  CHECK(std::abs(it[0] - 10.0 / 7.0) < 1e-10);
  CHECK(oracle::iterate_open_access(Scenario::solo(), TaxSchedule(1, 1), 0.0)[0] ==
        doctest::Approx(1.0));
  const auto shut = oracle::iterate_open_access(s, denied(s, 0), 0.0);
  CHECK(shut[0] == 0.0);
  CHECK(std::abs(shut[1] - 5.0 / 3.0) < 1e-10);
}

TEST_CASE("physically invalid solutions are rejected") {
  Scenario s = Scenario::sym2();
  s.legacy_debris = 40.0;
  CHECK(error_code_of([&] { solve_equilibrium(s, TaxSchedule::zeros(s), 0.0); }) ==
        ErrorCode::kPhysicallyInvalid);
  CHECK_NOTHROW(solve_equilibrium(s, TaxSchedule::zeros(s), 0.0, SolveOptions{false}));
}

TEST_CASE("two-player reduction") {
  const Scenario s = Scenario::sym2();
  const auto red = reduce_two_player(s, TaxSchedule::zeros(s), 0.0, 0);
  CHECK(std::abs(red.equilibrium.fleets[0] - 10.0 / 7.0) < 1e-12);
  CHECK(std::abs(red.equilibrium.fleets[1] - 10.0 / 7.0) < 1e-12);

  for (const auto& costs : {std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 4}}) {
    const Scenario s3 = three_sector(costs);
    const TaxSchedule t = TaxSchedule::zeros(s3);
    const auto full = solve_equilibrium(s3, t, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto r = reduce_two_player(s3, t, 0.0, i);
      CHECK(std::abs(r.equilibrium.fleets[0] - full.fleets[i]) < 1e-9);
      CHECK(std::abs(r.equilibrium.fleets[1] - (full.total_fleet() - full.fleets[i])) < 1e-9);
      // Same reduced game at another abatement level.
      const auto far = reduce_two_player(s3, t, 0.7, i);
      CHECK(far.complement_r == r.complement_r);
    }
  }
  CHECK(error_code_of([&] { reduce_two_player(s, TaxSchedule::zeros(s), 0.0, 5); }) ==
        ErrorCode::kIndexOutOfRange);
}

TEST_CASE("decomposition into sigma and r") {
  const Scenario s = Scenario::sym2();
  const TaxSchedule t = TaxSchedule::zeros(s);
  const auto a = solve_equilibrium(s, t, 0.0);
  CHECK(a.r[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(a.sigma[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  const auto b = solve_equilibrium(s, t, 1.0);
  CHECK(a.r == b.r);
  CHECK(a.sigma != b.sigma);
  const auto solo = solve_equilibrium(Scenario::solo(), TaxSchedule(1, 1), 0.0);
  CHECK(solo.r[0] == 1.0);
  CHECK(solo.sigma[0] == 1.0);
}

TEST_CASE("assumption flags") {
  CHECK(check_assumptions(Scenario::sym2(), TaxSchedule(2, 2)).all());
  Scenario s = Scenario::sym2();
  s.collision_coeff = 0.6;
  CHECK_FALSE(check_assumptions(s, TaxSchedule(2, 2)).assumption2);

  Scenario edge;
  edge.prices = {100.0};
  edge.costs = {0.01};
  edge.collision_coeff = 0.1;
  edge.debris_per_sat = 1.0;
  edge.catastrophe_threshold = 50.0;
  const auto flags = check_assumptions(edge, TaxSchedule(1, 1));
  CHECK(flags.assumption1[0]);
  const auto eq = solve_equilibrium(edge, TaxSchedule(1, 1), 0.0, SolveOptions{false});
  CHECK(eq.r[0] == doctest::Approx(100.0 / 10.01).epsilon(1e-14));
}

TEST_CASE("required abatement") {
  const Scenario s = Scenario::sym2();
  const TaxSchedule t = TaxSchedule::zeros(s);
  CHECK(std::abs(required_abatement(s, t) - 1.2) < 1e-12);
  CHECK(std::abs(required_abatement(s, t, AbatementMode::kStatic) - 6.0 / 7.0) < 1e-12);
  Scenario loose = s;
  loose.catastrophe_threshold = 3.0;
  CHECK(required_abatement(loose, t) == 0.0);
  CHECK(required_abatement(Scenario::solo(), TaxSchedule(1, 1)) == 0.0);
  // Bisection cross-check: debris sits at the threshold.
  const auto at = solve_equilibrium(s, t, required_abatement(s, t));
  CHECK(std::abs(at.debris.stock - 2.0) < 1e-12);
  CHECK_FALSE(at.debris.catastrophe);
}

TEST_CASE("comparative statics agree across methods on SYM2") {
  const Scenario s = Scenario::sym2();
  const TaxSchedule t = TaxSchedule::zeros(s);
  const auto an = sensitivities(s, t, 0.0, DerivativeMethod::kAnalytic);
  const auto fd = sensitivities(s, t, 0.0, DerivativeMethod::kFiniteDifference);
  const auto cf = sensitivities(s, t, 0.0, DerivativeMethod::kClosedFormTwoPlayer);
  CHECK(an.dS_dQ[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(an.dD_dQ == doctest::Approx(-5.0 / 7.0).epsilon(1e-12));
  for (std::size_t k = 0; k < an.dS_dtau.size(); ++k) {
    CHECK(an.dS_dtau[k] == doctest::Approx(fd.dS_dtau[k]).epsilon(1e-6));
    CHECK(an.dS_dtau[k] == doctest::Approx(cf.dS_dtau[k]).epsilon(1e-12));
    CHECK(an.d2S_dQ_dtau[k] == doctest::Approx(fd.d2S_dQ_dtau[k]).epsilon(1e-5));
  }
  CHECK(an.dS(0, 0, 1) < 0.0);
  CHECK(an.dS(1, 0, 1) > 0.0);
  CHECK(-an.dS(0, 0, 1) > an.dS(1, 0, 1));
  CHECK(an.dQbar(0, 1) < 0.0);
  CHECK(error_code_of([&] {
          sensitivities(three_sector({1, 1, 1}), TaxSchedule(3, 3), 0.0,
                        DerivativeMethod::kClosedFormTwoPlayer);
        }) == ErrorCode::kInvalidArgument);
  CHECK(error_code_of([&] {
          sensitivities(s, denied(s, 0), 0.0, DerivativeMethod::kAnalytic);
        }) == ErrorCode::kActiveSetChange);
}

TEST_CASE("property: solve, reduction and decomposition on sampled worlds") {
  ScenarioSampler sampler(7);
  for (int n = 0; n < 200; ++n) {
    const auto c = sampler.next();
    const auto eq = solve_equilibrium(c.scenario, c.taxes, 0.0);
    CHECK(eq.diagnostics.max_profit_residual < 1e-9);
    const auto it = oracle::iterate_open_access(c.scenario, c.taxes, 0.0);
    for (std::size_t i = 0; i < it.size(); ++i) {
      CHECK(std::abs(it[i] - eq.fleets[i]) < 1e-9);
      CHECK(std::abs(eq.sigma[i] * eq.r[i] - eq.fleets[i]) < 1e-12);
    }
    const auto moved = solve_equilibrium(c.scenario, c.taxes, 0.3);
    CHECK(moved.r == eq.r);
  }
}

TEST_CASE("solves are bitwise deterministic") {
  ScenarioSampler a(99), b(99);
  for (int n = 0; n < 20; ++n) {
    const auto ca = a.next(), cb = b.next();
    CHECK(ca.scenario == cb.scenario);
    CHECK(solve_equilibrium(ca.scenario, ca.taxes, 0.0).fleets ==
          solve_equilibrium(cb.scenario, cb.taxes, 0.0).fleets);
  }
}

}  // TEST_SUITE
