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

#ifndef ORBIT_CLI_HPP_
#define ORBIT_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orbit/scenario.hpp"

namespace orbit::cli {

enum class Command { kSolve, kRegulate, kTreaty, kSweep, kVerify };
enum class Format { kJson, kCsv };

std::string_view to_string(Command c);

struct SweepAxis {
  std::string parameter;  // any scalar override key
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 2;

  double value(std::size_t k) const;
};

struct RunConfig {
  Command command = Command::kSolve;
  std::string scenario_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::optional<SweepAxis> sweep;
  Format format = Format::kJson;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::size_t batch = 25;  // verify: random scenarios on top of the loaded one
};

// Throws kValidationError when the sweep axis and command disagree.
void validate_config(const RunConfig& cfg);

// "param:from:to:steps"
SweepAxis parse_sweep(const std::string& text);
// "key=value"
std::pair<std::string, std::string> parse_assignment(const std::string& text);

struct Bundle {
  Scenario scenario;
  TaxSchedule taxes;
  double abatement = 0.0;
};

// Keys: scenario.<field> or a bare field, with short aliases k, d, D0, Dbar,
// X, c, p, m, N; element keys are 1-based ("scenario.p.2", "tax.1.2").
// Values are JSON literals.
void apply_override(nlohmann::json& doc, const std::string& key, const std::string& value);

Bundle parse_bundle(nlohmann::json doc,
                    const std::vector<std::pair<std::string, std::string>>& overrides = {});
// ParseError on unreadable or malformed files.
nlohmann::json load_document(const std::string& path);
Bundle load_scenario(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& overrides = {});

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const Bundle& b);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitAssumption = 4;

// Writes the report to cfg.out_path or `out`, errors to `err` as JSON.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Report builders, exposed for tests.
nlohmann::json solve_report(const Bundle& b);
nlohmann::json regulate_report(const Bundle& b);
nlohmann::json treaty_report(const Bundle& b);

// One row per grid point. Columns: the swept value, S_i, D, W_j, qbar, then
// per party alpha/beta for both coefficient variants, then per party the
// condition-25/27 flags for both variants, then status ("ok" or an error
// code). Rows whose point fails keep empty cells.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
SweepTable sweep_table(const nlohmann::json& doc,
                       const std::vector<std::pair<std::string, std::string>>& overrides,
                       const SweepAxis& axis);
std::string to_csv(const SweepTable& t);
nlohmann::json to_json(const SweepTable& t);

nlohmann::json verify_report(const Bundle& b, std::uint64_t seed, std::size_t batch);

std::string flatten_csv(const nlohmann::json& report);

int run(int argc, char** argv);

}  // namespace orbit::cli

#endif  // ORBIT_CLI_HPP_
