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
#include "orbit/oracle.hpp"
#include "orbit/regulation.hpp"
#include "orbit/sampling.hpp"
#include "orbit/verification.hpp"
#include "support.hpp"

using namespace orbit;
using orbit::testing::error_code_of;

TEST_SUITE("oracle") {

TEST_CASE("grid maximisation") {
  const auto peak = oracle::grid_maximize(
      [](std::span<const double> x) { return -(x[0] - 0.3) * (x[0] - 0.3); }, 1, 0.1);
  CHECK(peak.point[0] == doctest::Approx(0.3));
  CHECK(peak.value == doctest::Approx(0.0));
  CHECK(peak.evaluations == 11);

  const auto flat = oracle::grid_maximize([](std::span<const double>) { return 1.0; }, 2, 0.25);
  CHECK(flat.point == std::vector<double>{0.0, 0.0});

  const Scenario solo = Scenario::solo();
  const auto w = oracle::grid_maximize(
      [&](std::span<const double> x) { return oracle::welfare(solo, TaxSchedule(1, 1, x[0]), 0.0)[0]; },
      1, 1e-3);
  CHECK(w.point[0] == 0.0);

  CHECK(error_code_of([] {
          oracle::grid_maximize([](std::span<const double>) { return 0.0; }, 3, 1e-3);
        }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("finite differences") {
  const std::vector<double> x = {3.0};
  CHECK(std::abs(oracle::finite_difference([](std::span<const double> v) { return v[0] * v[0]; }, x, 0) -
                 6.0) < 1e-6);
  CHECK(std::abs(oracle::finite_difference([](std::span<const double>) { return 4.0; }, x, 0)) < 1e-9);
  CHECK(error_code_of([&] {
          oracle::finite_difference([](std::span<const double>) -> double { throw std::runtime_error("x"); },
                                    x, 0);
        }) == ErrorCode::kEvaluationFailure);
}

TEST_CASE("bisection") {
  const double r = oracle::bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(std::abs(r - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("report bookkeeping") {
  oracle::OracleReport a;
  a.tolerance = 1e-9;
  a.record("x", 1.0, 1.0 + 1e-12);
  a.finalize();
  CHECK(a.passed);
  oracle::OracleReport b;
  b.tolerance = 1e-9;
  b.record("y", 1.0, 2.0);
  a.merge(b);
  a.finalize();
  CHECK_FALSE(a.passed);
  CHECK(a.counterexamples.size() == 1);
  CHECK(a.max_residual == doctest::Approx(1.0));
}

TEST_CASE("iteration oracle copes with crowded worlds") {
  SamplingOptions o;
  o.min_sectors = 6;
  ScenarioSampler sampler(3, o);
  for (int n = 0; n < 50; ++n) {
    const auto c = sampler.next();
    CHECK_NOTHROW(oracle::iterate_open_access(c.scenario, c.taxes, 0.0));
  }
}

TEST_CASE("extended welfare matches the double-precision path") {
  ScenarioSampler sampler(4);
  for (int n = 0; n < 50; ++n) {
    const auto c = sampler.next();
    const auto lw = oracle::welfare_extended(c.scenario, c.taxes, 0.0);
    const auto w = national_welfare(c.scenario, c.taxes, 0.0).welfare;
    for (std::size_t j = 0; j < w.size(); ++j) {
      CHECK(std::abs(static_cast<double>(lw[j]) - w[j]) < 1e-11 * std::max(1.0, std::abs(w[j])));
    }
  }
}

TEST_CASE("tax deviation probe") {
  const Scenario s = Scenario::sym2();
  const auto rep = oracle::deviation_probe_taxes(s, TaxSchedule::zeros(s), 0.0, 0.01);
  CHECK(rep.passed);
  const auto bad = oracle::deviation_probe_taxes(s, TaxSchedule(2, 2, 0.5), 0.0, 0.05);
  CHECK_FALSE(bad.passed);
}

}  // TEST_SUITE

TEST_SUITE("verification") {

TEST_CASE("digest over the reference worlds") {
  verify::Digest d;
  for (const auto& s : {Scenario::sym2(), Scenario::hideb(), Scenario::solo()}) {
    verify::run_scenario(s, TaxSchedule::zeros(s), 0.0, d);
  }
  d.finalize();
  for (const auto& suite : d.suites()) {
    CAPTURE(suite.name);
    if (!suite.claim) CHECK(suite.report.passed);
  }
  CHECK(d.passed());
  const auto* other = d.find("beta.rival_sector_signs");
  REQUIRE(other != nullptr);
  CHECK(other->claim);
  CHECK_FALSE(other->report.passed);
}

TEST_CASE("digest merge is order deterministic") {
  ScenarioSampler sampler(21);
  std::vector<verify::Digest> parts(4);
  for (auto& p : parts) {
    const auto c = sampler.next();
    verify::run_scenario(c.scenario, c.taxes, 0.0, p);
  }
  verify::Digest x, y;
  for (const auto& p : parts) x.merge(p);
  for (const auto& p : parts) y.merge(p);
  x.finalize();
  y.finalize();
  REQUIRE(x.suites().size() == y.suites().size());
  for (std::size_t k = 0; k < x.suites().size(); ++k) {
    CHECK(x.suites()[k].name == y.suites()[k].name);
    CHECK(x.suites()[k].report.max_residual == y.suites()[k].report.max_residual);
  }
}

TEST_CASE("a broken tolerance shows up as a counterexample") {
  verify::Digest d;
  auto& s = d.suite("demo", 1e-3);
  s.report.record("case", 0.0, 1.0);
  d.finalize();
  CHECK_FALSE(d.passed());
  auto& c = d.suite("demo.claim", 0.0, true);
  c.report.violate("case", 0.0, 1.0);
  d.finalize();
  CHECK(d.find("demo.claim")->claim);
}

}  // TEST_SUITE
