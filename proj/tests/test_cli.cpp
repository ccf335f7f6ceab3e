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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "orbit/cli.hpp"
#include "orbit/sampling.hpp"
#include "support.hpp"

using namespace orbit;
using namespace orbit::cli;
using nlohmann::json;
using orbit::testing::error_code_of;

namespace {

std::string fixture(const char* name) { return std::string(ORBIT_FIXTURES_DIR) + "/" + name; }

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  Run r;
  r.code = execute(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig config(Command c, const char* file = "sym2.json") {
  RunConfig cfg;
  cfg.command = c;
  cfg.scenario_path = fixture(file);
  return cfg;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("fixtures load") {
  const Bundle b = load_scenario(fixture("sym2.json"));
  CHECK(b.scenario == Scenario::sym2());
  CHECK(b.taxes == TaxSchedule::zeros(b.scenario));
  CHECK(b.abatement == 0.0);
  CHECK(load_scenario(fixture("solo.json")).scenario == Scenario::solo());
  CHECK(load_scenario(fixture("hideb.json")).scenario == Scenario::hideb());
}

TEST_CASE("overrides") {
  CHECK(load_scenario(fixture("sym2.json"), {{"scenario.D0", "5"}}).scenario == Scenario::hideb());
  CHECK(load_scenario(fixture("sym2.json"), {{"legacy_debris", "5"}}).scenario == Scenario::hideb());
  const Bundle b = load_scenario(fixture("sym2.json"),
                                 {{"tax.1.2", "0.5"}, {"scenario.p.2", "3"}, {"abatement", "0.25"}});
  CHECK(b.taxes(0, 1) == 0.5);
  CHECK(b.scenario.prices[1] == 3.0);
  CHECK(b.abatement == 0.25);

  CHECK(error_code_of([] { load_scenario(fixture("sym2.json"), {{"scenario.zeta", "1"}}); }) ==
        ErrorCode::kOverrideError);
  CHECK(error_code_of([] { load_scenario(fixture("sym2.json"), {{"tax.3.1", "0.1"}}); }) ==
        ErrorCode::kOverrideError);
  CHECK(error_code_of([] { load_scenario(fixture("sym2.json"), {{"k", "not json"}}); }) ==
        ErrorCode::kOverrideError);
  CHECK(error_code_of([] { parse_assignment("novalue"); }) == ErrorCode::kOverrideError);
}

TEST_CASE("validation errors name the field") {
  try {
    load_scenario(fixture("sym2.json"), {{"scenario.m", "[1]"}});
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValidationError);
    CHECK(orbit::testing::any_contains(e.details(), "costs"));
  }
  CHECK(error_code_of([] { load_scenario(fixture("sym2.json"), {{"tax", "[[2,0],[0,0]]"}}); }) ==
        ErrorCode::kValidationError);
  CHECK(error_code_of([] { load_scenario(fixture("sym2.json"), {{"k", "\"high\""}}); }) ==
        ErrorCode::kValidationError);
  const auto extra = temp_file("orbit_extra.json", R"({"scenario":{},"bogus":1})");
  CHECK(error_code_of([&] { load_scenario(extra); }) == ErrorCode::kValidationError);
  const auto broken = temp_file("orbit_broken.json", "{ not json");
  CHECK(error_code_of([&] { load_scenario(broken); }) == ErrorCode::kParseError);
  CHECK(error_code_of([] { load_scenario("/nonexistent/orbit.json"); }) == ErrorCode::kParseError);
}

TEST_CASE("property: emit then load is lossless") {
  SamplingOptions o;
  o.max_tax = 0.5;
  ScenarioSampler sampler(17, o);
  for (int n = 0; n < 50; ++n) {
    const auto c = sampler.next();
    Bundle b{c.scenario, c.taxes, 0.1 * n / 3.0};
    const Bundle back = parse_bundle(json::parse(to_json(b).dump()));
    CHECK(back.scenario == b.scenario);
    CHECK(back.taxes == b.taxes);
    CHECK(back.abatement == b.abatement);
    CHECK(to_json(back).dump() == to_json(b).dump());
  }
}

TEST_CASE("sweep axis parsing and config checks") {
  const auto a = parse_sweep("D0:0:4:5");
  CHECK(a.parameter == "D0");
  CHECK(a.value(0) == 0.0);
  CHECK(a.value(4) == 4.0);
  CHECK(a.value(2) == 2.0);
  CHECK(error_code_of([] { parse_sweep("D0:0:4:1"); }) == ErrorCode::kValidationError);
  CHECK(error_code_of([] { parse_sweep("D0:0:x:3"); }) == ErrorCode::kValidationError);
  CHECK(error_code_of([] { parse_sweep("D0:0:4"); }) == ErrorCode::kValidationError);

  RunConfig cfg = config(Command::kSweep);
  CHECK(error_code_of([&] { validate_config(cfg); }) == ErrorCode::kValidationError);
  cfg.sweep = parse_sweep("n_sectors:1:2:2");
  CHECK(error_code_of([&] { validate_config(cfg); }) == ErrorCode::kValidationError);
  cfg.sweep = parse_sweep("p:1:2:2");
  CHECK(error_code_of([&] { validate_config(cfg); }) == ErrorCode::kValidationError);
  cfg.sweep = parse_sweep("p.1:1:2:2");
  CHECK_NOTHROW(validate_config(cfg));
  RunConfig solve = config(Command::kSolve);
  solve.sweep = parse_sweep("k:0:0.1:2");
  CHECK(error_code_of([&] { validate_config(solve); }) == ErrorCode::kValidationError);
  CHECK(error_code_of([] { validate_config(config(Command::kVerify)); }) == ErrorCode::kValidationError);
}

TEST_CASE("solve command") {
  const Run r = run_cfg(config(Command::kSolve));
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["fleets"][0].get<double>() - 10.0 / 7.0) < 1e-9);
  CHECK(std::abs(j["debris"]["stock"].get<double>() - 20.0 / 7.0) < 1e-9);
  CHECK(j["assumptions"]["all"].get<bool>());
  CHECK(j["input"]["scenario"]["n_markets"] == 2);

  RunConfig strict = config(Command::kSolve);
  strict.strict = true;
  strict.overrides = {{"k", "0.6"}, {"d", "1"}};
  const Run s = run_cfg(strict);
  CHECK(s.code == kExitAssumption);
  CHECK(json::parse(s.err)["error"]["code"] == "AssumptionViolation");
  CHECK(s.out.empty());

  RunConfig bad = config(Command::kSolve);
  bad.overrides = {{"scenario.m", "[1]"}};
  const Run v = run_cfg(bad);
  CHECK(v.code == kExitInvalid);
  CHECK(json::parse(v.err)["error"]["code"] == "ValidationError");

  RunConfig dead = config(Command::kSolve);
  dead.overrides = {{"D0", "40"}};
  const Run d = run_cfg(dead);
  CHECK(d.code == kExitSolver);
  CHECK(json::parse(d.err)["error"]["code"] == "PhysicallyInvalid");
}

TEST_CASE("csv output and file output") {
  RunConfig cfg = config(Command::kSolve);
  cfg.format = Format::kCsv;
  const Run r = run_cfg(cfg);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("/fleets/0,1.4285714285714286") != std::string::npos);

  const auto path = (std::filesystem::temp_directory_path() / "orbit_solve.json").string();
  cfg.format = Format::kJson;
  cfg.out_path = path;
  const Run f = run_cfg(cfg);
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["command"] == "solve");
}

TEST_CASE("treaty command reports both variants and the divergence") {
  const Run r = run_cfg(config(Command::kTreaty));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["variants"].size() == 2);
  CHECK(j["variants"][0]["variant"] == "model-derived");
  CHECK(j["variants"][1]["variant"] == "closed-form");
  const auto& d = j["divergence"][0];
  CHECK(std::abs(d["model_derived"]["alpha"].get<double>() - 20.0 / 49.0) < 1e-9);
  CHECK(std::abs(d["closed_form"]["alpha"].get<double>() - 125.0 / 630.0) < 1e-9);
  CHECK(d["diverges"].get<bool>());
}

TEST_CASE("regulate command") {
  const Run r = run_cfg(config(Command::kRegulate, "solo.json"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["converged"].get<bool>());
  CHECK(j["taxes"][0][0] == 0.0);
  CHECK(j["deviation_probe"]["passed"].get<bool>());
}

TEST_CASE("sweep is deterministic and keeps its column layout") {
  RunConfig cfg = config(Command::kSweep);
  cfg.sweep = parse_sweep("D0:0:12:7");
  cfg.format = Format::kCsv;
  const Run a = run_cfg(cfg);
  const Run b = run_cfg(cfg);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("D0,S_1,S_2,D,W_1,W_2,qbar,alpha_model_1", 0) == 0);
  CHECK(header.size() > 0);
  CHECK(header.substr(header.size() - 6) == "status");
  std::string row;
  int rows = 0, failed = 0;
  while (std::getline(lines, row)) {
    ++rows;
    failed += row.find("PhysicallyInvalid") != std::string::npos;
  }
  CHECK(rows == 7);
  CHECK(failed > 0);

  cfg.format = Format::kJson;
  const json j = json::parse(run_cfg(cfg).out);
  CHECK(j["rows"].size() == 7);
  CHECK(j["rows"][0]["status"] == "ok");
}

TEST_CASE("verify command") {
  RunConfig cfg = config(Command::kVerify);
  cfg.seed = 42;
  cfg.batch = 6;
  const Run r = run_cfg(cfg);
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["passed"].get<bool>());
  bool probe = false;
  for (const auto& s : j["suites"]) {
    if (s["kind"] == "invariant") CHECK(s["passed"].get<bool>());
    probe = probe || s["name"] == "regulation.deviation_probe";
  }
  CHECK(probe);
  CHECK(run_cfg(cfg).out == r.out);
}

}  // TEST_SUITE
