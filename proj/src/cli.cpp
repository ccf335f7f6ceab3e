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

#include "orbit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "orbit/open_access.hpp"
#include "orbit/regulation.hpp"
#include "orbit/sampling.hpp"
#include "orbit/treaty.hpp"
#include "orbit/verification.hpp"

namespace orbit::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> m = {
      {"k", "collision_coeff"},       {"d", "debris_per_sat"},
      {"D0", "legacy_debris"},        {"Dbar", "catastrophe_threshold"},
      {"X", "catastrophe_damages"},   {"c", "abatement_cost"},
      {"p", "prices"},                {"m", "costs"},
      {"N", "treaty_parties"},
  };
  return m;
}

const std::vector<std::string>& scenario_fields() {
  static const std::vector<std::string> f = {
      "n_markets",      "n_sectors",       "prices",
      "costs",          "collision_coeff", "debris_per_sat",
      "legacy_debris",  "catastrophe_threshold", "catastrophe_damages",
      "abatement_cost", "treaty_parties",
  };
  return f;
}

bool is_field(const std::string& name) {
  const auto& f = scenario_fields();
  return std::find(f.begin(), f.end(), name) != f.end();
}

std::string canonical(const std::string& name) {
  const auto it = aliases().find(name);
  return it == aliases().end() ? name : it->second;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

[[noreturn]] void override_error(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kOverrideError, "override '" + key + "': " + why);
}

std::size_t one_based(const std::string& key, const std::string& text, std::size_t size) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    override_error(key, "index '" + text + "' is not a positive integer");
  }
  if (pos != text.size() || v < 1) override_error(key, "index '" + text + "' is not a positive integer");
  if (v > size) {
    override_error(key, "index " + text + " out of range (size " + std::to_string(size) + ")");
  }
  return v - 1;
}

std::size_t dimension(const json& scenario, const char* field, const std::string& key) {
  if (!scenario.is_object() || !scenario.contains(field) || !scenario[field].is_number_unsigned()) {
    override_error(key, std::string("needs a valid scenario.") + field);
  }
  return scenario[field].get<std::size_t>();
}

std::string number(double v) { return json(v).dump(); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

json error_object(const std::string& code, const std::string& message,
                  const std::vector<std::string>& details, int exit_code) {
  return json{{"error", {{"code", code}, {"message", message}, {"details", details}}},
              {"exit_code", exit_code}};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kValidationError:
    case ErrorCode::kOverrideError:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kInvalidArgument:
      return kExitInvalid;
    default:
      return kExitSolver;
  }
}

json vec(const std::vector<double>& v) { return json(v); }

json matrix(const TaxSchedule& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.sectors(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.markets(); ++j) row.push_back(t(i, j));
    rows.push_back(row);
  }
  return rows;
}

json debris_json(const DebrisState& d) {
  return {{"stock", d.stock},
          {"survival", d.survival},
          {"catastrophe", d.catastrophe},
          {"physically_valid", d.physically_valid}};
}

json assumptions_json(const AssumptionFlags& a) {
  return {{"assumption1", std::vector<bool>(a.assumption1.begin(), a.assumption1.end())},
          {"assumption2", a.assumption2},
          {"all", a.all()}};
}

json coefficients_json(const BenefitCoefficients& b) {
  json j = {{"alpha", b.alpha}, {"beta", b.beta}};
  if (b.variant == CoefficientVariant::kModelDerived) j["fit_residual"] = b.fit_residual;
  return j;
}

json analysis_json(const TreatyAnalysis& a) {
  json parties = json::array();
  for (const auto& p : a.parties) {
    parties.push_back({{"coefficients", coefficients_json(p.coeffs)},
                       {"pivot_rhs", p.pivot_rhs},
                       {"pivot_condition", p.pivot_condition},
                       {"stay_payoff", p.stay_payoff},
                       {"free_ride_payoff", p.free_ride_payoff},
                       {"punishment_bound", p.punishment_bound},
                       {"punishment_condition", p.punishment_condition},
                       {"response",
                        {{"q_rest", p.response.q_rest},
                         {"raw", p.response.raw},
                         {"clamped", p.response.clamped}}},
                       {"defection_payoff", p.defection_payoff},
                       {"stays", p.stays}});
  }
  json nash = json::array();
  for (const auto& n : a.nash_equilibria) {
    nash.push_back({{"contributions", n.contributions}, {"total", n.total}});
  }
  return {{"variant", std::string(to_string(a.variant))},
          {"qbar", a.qbar},
          {"per_party_burden", a.per_party_burden},
          {"parties", parties},
          {"nash_equilibria", nash},
          {"rejected_profiles", a.rejected_profiles},
          {"no_defection_bound", a.no_defection_bound},
          {"averting_sustainable", a.averting_sustainable},
          {"self_enforcing", a.self_enforcing},
          {"payoff_self_enforcing", a.payoff_self_enforcing}};
}

json divergence_json(const std::vector<CoefficientDivergence>& div) {
  json out = json::array();
  for (const auto& d : div) {
    out.push_back({{"party", d.party + 1},
                   {"model_derived", coefficients_json(d.model)},
                   {"closed_form", coefficients_json(d.closed)},
                   {"alpha_gap", d.alpha_gap},
                   {"beta_gap", d.beta_gap},
                   {"diverges", d.diverges}});
  }
  return out;
}

// Runs fn(i) for i in [0, n) on a bounded pool; results land by index.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F fn) {
  std::vector<T> out(n);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t base = 0; base < n; base += workers) {
    std::vector<std::future<T>> batch;
    for (std::size_t i = base; i < std::min(n, base + workers); ++i) {
      batch.push_back(std::async(std::launch::async, fn, i));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) out[base + i] = batch[i].get();
  }
  return out;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::kSolve: return "solve";
    case Command::kRegulate: return "regulate";
    case Command::kTreaty: return "treaty";
    case Command::kSweep: return "sweep";
    case Command::kVerify: return "verify";
  }
  return "unknown";
}

double SweepAxis::value(std::size_t k) const {
  if (k + 1 == steps) return to;
  return from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

SweepAxis parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4 || parts[0].empty()) {
    throw Error(ErrorCode::kValidationError, "--sweep expects param:from:to:steps, got '" + text + "'");
  }
  SweepAxis axis;
  axis.parameter = parts[0];
  try {
    std::size_t a = 0, b = 0, c = 0;
    axis.from = std::stod(parts[1], &a);
    axis.to = std::stod(parts[2], &b);
    const long long steps = std::stoll(parts[3], &c);
    if (a != parts[1].size() || b != parts[2].size() || c != parts[3].size()) throw std::invalid_argument("");
    if (steps < 2) throw Error(ErrorCode::kValidationError, "--sweep: steps must be >= 2");
    axis.steps = static_cast<std::size_t>(steps);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kValidationError, "--sweep: malformed number in '" + text + "'");
  }
  if (!std::isfinite(axis.from) || !std::isfinite(axis.to)) {
    throw Error(ErrorCode::kValidationError, "--sweep: bounds must be finite");
  }
  return axis;
}

std::pair<std::string, std::string> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::kOverrideError, "--set expects key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

void validate_config(const RunConfig& cfg) {
  if (cfg.sweep.has_value() != (cfg.command == Command::kSweep)) {
    throw Error(ErrorCode::kValidationError, cfg.command == Command::kSweep
                                                 ? "sweep requires --sweep param:from:to:steps"
                                                 : "--sweep is only valid with the sweep command");
  }
  if (cfg.sweep) {
    if (cfg.sweep->steps < 2) throw Error(ErrorCode::kValidationError, "--sweep: steps must be >= 2");
    auto parts = split(cfg.sweep->parameter, '.');
    if (!parts.empty() && parts[0] == "scenario") parts.erase(parts.begin());
    const std::string field = parts.empty() ? "" : canonical(parts[0]);
    const bool dims = field == "n_markets" || field == "n_sectors" || field == "treaty_parties";
    const bool whole = (field == "prices" || field == "costs" || field == "tax") &&
                       parts.size() == 1;
    if (dims || whole) {
      throw Error(ErrorCode::kValidationError,
                  "--sweep: '" + cfg.sweep->parameter + "' is not a scalar parameter");
    }
  }
  if (cfg.command == Command::kVerify && !cfg.seed) {
    throw Error(ErrorCode::kValidationError, "verify requires --seed");
  }
}

void apply_override(json& doc, const std::string& key, const std::string& value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::parse_error&) {
    override_error(key, "value '" + value + "' is not a JSON literal");
  }
  if (!doc.is_object()) override_error(key, "document is not an object");
  auto parts = split(key, '.');
  if (parts.empty() || parts[0].empty()) override_error(key, "empty key");

  if (parts[0] == "tax") {
    if (parts.size() == 1) {
      doc["tax"] = v;
      return;
    }
    if (parts.size() != 3) override_error(key, "expected tax.<sector>.<market>");
    const json& sc = doc.contains("scenario") ? doc["scenario"] : json();
    const std::size_t ns = dimension(sc, "n_sectors", key);
    const std::size_t nm = dimension(sc, "n_markets", key);
    if (!doc.contains("tax") || doc["tax"].is_null()) {
      doc["tax"] = json::array();
      for (std::size_t i = 0; i < ns; ++i) doc["tax"].push_back(std::vector<double>(nm, 0.0));
    }
    json& tax = doc["tax"];
    if (!tax.is_array()) override_error(key, "tax is not a matrix");
    const std::size_t i = one_based(key, parts[1], tax.size());
    if (!tax[i].is_array()) override_error(key, "tax row is not an array");
    const std::size_t j = one_based(key, parts[2], tax[i].size());
    tax[i][j] = v;
    return;
  }
  if (parts[0] == "abatement" || parts[0] == "Q") {
    if (parts.size() != 1) override_error(key, "abatement is a scalar");
    doc["abatement"] = v;
    return;
  }
  if (parts[0] == "scenario") parts.erase(parts.begin());
  if (parts.empty()) override_error(key, "missing field name");
  const std::string field = canonical(parts[0]);
  if (!is_field(field)) override_error(key, "unknown key");
  if (!doc.contains("scenario") || !doc["scenario"].is_object()) doc["scenario"] = json::object();
  json& sc = doc["scenario"];
  if (parts.size() == 1) {
    sc[field] = v;
    return;
  }
  if (parts.size() != 2 || (field != "prices" && field != "costs")) {
    override_error(key, "only prices and costs take an element index");
  }
  if (!sc.contains(field) || !sc[field].is_array()) override_error(key, field + " is not an array");
  sc[field][one_based(key, parts[1], sc[field].size())] = v;
}

Bundle parse_bundle(json doc, const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) apply_override(doc, k, v);

  std::vector<std::string> problems;
  if (!doc.is_object()) throw Error(ErrorCode::kValidationError, "scenario file must hold a JSON object");
  for (const auto& [k, _] : doc.items()) {
    if (k != "scenario" && k != "tax" && k != "abatement") problems.push_back(k + ": unknown field");
  }
  if (!doc.contains("scenario") || !doc["scenario"].is_object()) {
    problems.emplace_back("scenario: missing object");
    throw Error(ErrorCode::kValidationError, "invalid scenario", problems);
  }
  const json& sc = doc["scenario"];
  for (const auto& [k, _] : sc.items()) {
    if (!is_field(k)) problems.push_back("scenario." + k + ": unknown field");
  }

  Bundle b;
  Scenario& s = b.scenario;
  const auto count = [&](const char* f, std::size_t& out, bool required) {
    if (!sc.contains(f)) {
      if (required) problems.push_back(std::string(f) + ": missing");
      return;
    }
    if (!sc[f].is_number_unsigned() || sc[f].get<std::size_t>() == 0) {
      problems.push_back(std::string(f) + ": must be a positive integer");
      return;
    }
    out = sc[f].get<std::size_t>();
  };
  const auto real = [&](const char* f, double& out) {
    if (!sc.contains(f)) {
      problems.push_back(std::string(f) + ": missing");
    } else if (!sc[f].is_number()) {
      problems.push_back(std::string(f) + ": must be a number");
    } else {
      out = sc[f].get<double>();
    }
  };
  const auto list = [&](const char* f, std::vector<double>& out) {
    if (!sc.contains(f)) {
      problems.push_back(std::string(f) + ": missing");
      return;
    }
    if (!sc[f].is_array()) {
      problems.push_back(std::string(f) + ": must be an array of numbers");
      return;
    }
    for (const auto& x : sc[f]) {
      if (!x.is_number()) {
        problems.push_back(std::string(f) + ": must be an array of numbers");
        out.clear();
        return;
      }
      out.push_back(x.get<double>());
    }
  };
  count("n_markets", s.n_markets, true);
  count("n_sectors", s.n_sectors, true);
  list("prices", s.prices);
  list("costs", s.costs);
  real("collision_coeff", s.collision_coeff);
  real("debris_per_sat", s.debris_per_sat);
  real("legacy_debris", s.legacy_debris);
  real("catastrophe_threshold", s.catastrophe_threshold);
  real("catastrophe_damages", s.catastrophe_damages);
  real("abatement_cost", s.abatement_cost);
  s.treaty_parties = s.n_markets;
  count("treaty_parties", s.treaty_parties, false);
  if (!problems.empty()) throw Error(ErrorCode::kValidationError, "invalid scenario", problems);
  for (auto& p : validate_scenario(s)) problems.push_back(std::move(p));
  if (!problems.empty()) throw Error(ErrorCode::kValidationError, "invalid scenario", problems);

  b.taxes = TaxSchedule::zeros(s);
  if (doc.contains("tax") && !doc["tax"].is_null()) {
    const json& tax = doc["tax"];
    bool shaped = tax.is_array() && tax.size() == s.n_sectors;
    for (std::size_t i = 0; shaped && i < s.n_sectors; ++i) {
      shaped = tax[i].is_array() && tax[i].size() == s.n_markets;
      for (std::size_t j = 0; shaped && j < s.n_markets; ++j) {
        shaped = tax[i][j].is_number();
        if (shaped) b.taxes(i, j) = tax[i][j].get<double>();
      }
    }
    if (!shaped) {
      problems.push_back("tax: must be an n_sectors x n_markets matrix of numbers (" +
                         std::to_string(s.n_sectors) + " x " + std::to_string(s.n_markets) + ")");
    } else {
      for (auto& p : validate_taxes(s, b.taxes)) problems.push_back(std::move(p));
    }
  }
  if (doc.contains("abatement")) {
    const json& q = doc["abatement"];
    if (!q.is_number() || !std::isfinite(q.get<double>()) || q.get<double>() < 0.0) {
      problems.emplace_back("abatement: must be a finite number >= 0");
    } else {
      b.abatement = q.get<double>();
    }
  }
  if (!problems.empty()) throw Error(ErrorCode::kValidationError, "invalid scenario", problems);
  return b;
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, "'" + path + "': " + e.what());
  }
}

Bundle load_scenario(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  return parse_bundle(load_document(path), overrides);
}

json to_json(const Scenario& s) {
  return {{"n_markets", s.n_markets},
          {"n_sectors", s.n_sectors},
          {"prices", s.prices},
          {"costs", s.costs},
          {"collision_coeff", s.collision_coeff},
          {"debris_per_sat", s.debris_per_sat},
          {"legacy_debris", s.legacy_debris},
          {"catastrophe_threshold", s.catastrophe_threshold},
          {"catastrophe_damages", s.catastrophe_damages},
          {"abatement_cost", s.abatement_cost},
          {"treaty_parties", s.treaty_parties}};
}

json to_json(const Bundle& b) {
  return {{"scenario", to_json(b.scenario)}, {"tax", matrix(b.taxes)}, {"abatement", b.abatement}};
}

json solve_report(const Bundle& b) {
  const Scenario& s = b.scenario;
  const auto eq = solve_equilibrium(s, b.taxes, b.abatement);
  const auto w = national_welfare(s, b.taxes, eq);
  std::vector<double> residuals;
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    residuals.push_back(eq.active[i] ? sector_profit(s, b.taxes, eq.fleets, b.abatement, i) : 0.0);
  }
  json report = {{"command", "solve"},
                 {"fleets", vec(eq.fleets)},
                 {"total_fleet", eq.total_fleet()},
                 {"sigma", vec(eq.sigma)},
                 {"r", vec(eq.r)},
                 {"active", std::vector<bool>(eq.active.begin(), eq.active.end())},
                 {"debris", debris_json(eq.debris)},
                 {"welfare", vec(w.welfare)},
                 {"gross_value", vec(w.gross_value)},
                 {"assumptions", assumptions_json(check_assumptions(s, b.taxes))},
                 {"profit_residuals", residuals},
                 {"max_profit_residual", eq.diagnostics.max_profit_residual},
                 {"determinant", eq.diagnostics.determinant},
                 {"deactivations", eq.diagnostics.deactivations}};
  try {
    report["required_abatement"] = {
        {"responsive", required_abatement(s, b.taxes, AbatementMode::kResponsive)},
        {"static", required_abatement(s, b.taxes, AbatementMode::kStatic)}};
  } catch (const Error& e) {
    report["required_abatement"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  return report;
}

namespace {

json regulation_json(const RegulatoryEquilibrium& r, const Scenario* s) {
  json j = {{"taxes", matrix(r.taxes)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"max_update", r.max_update},
            {"trace", r.trace},
            {"fleets", vec(r.equilibrium.fleets)},
            {"debris", debris_json(r.equilibrium.debris)}};
  if (s) j["welfare"] = vec(national_welfare(*s, r.taxes, r.equilibrium).welfare);
  j["deviation_probe"] = {{"checked", r.deviation_checked},
                          {"gain", r.deviation_gain},
                          {"step", r.deviation_step},
                          {"tolerance", 1e-6},
                          {"passed", r.deviation_checked && r.deviation_gain <= 1e-6}};
  if (r.deviation_checked) {
    j["deviation_probe"]["note"] =
        "no improving unilateral tax-column deviation on a grid of this step; "
        "weaker than continuous optimality";
  }
  return j;
}

}  // namespace

json regulate_report(const Bundle& b) {
  const auto r = regulatory_equilibrium(b.scenario, b.abatement, b.taxes);
  json j = regulation_json(r, &b.scenario);
  j["command"] = "regulate";
  return j;
}

json treaty_report(const Bundle& b) {
  const Scenario& s = b.scenario;
  json variants = json::array();
  for (auto v : {CoefficientVariant::kModelDerived, CoefficientVariant::kClosedForm}) {
    variants.push_back(analysis_json(nash_abatement(s, b.taxes, v)));
  }
  return {{"command", "treaty"},
          {"qbar", required_abatement(s, b.taxes, AbatementMode::kResponsive)},
          {"qbar_static", required_abatement(s, b.taxes, AbatementMode::kStatic)},
          {"variants", variants},
          {"divergence", divergence_json(coefficient_divergence(s, b.taxes))}};
}

SweepTable sweep_table(const json& doc,
                       const std::vector<std::pair<std::string, std::string>>& overrides,
                       const SweepAxis& axis) {
  const auto bundle_at = [&](double value) {
    auto ov = overrides;
    ov.emplace_back(axis.parameter, number(value));
    return parse_bundle(doc, ov);
  };
  // Column layout comes from the first point; dimension fields cannot be swept.
  const Scenario s0 = bundle_at(axis.value(0)).scenario;
  const std::size_t ns = s0.n_sectors, nm = s0.n_markets, np = s0.treaty_parties;
  SweepTable table;
  table.columns.push_back(axis.parameter);
  for (std::size_t i = 0; i < ns; ++i) table.columns.push_back("S_" + std::to_string(i + 1));
  table.columns.emplace_back("D");
  for (std::size_t j = 0; j < nm; ++j) table.columns.push_back("W_" + std::to_string(j + 1));
  table.columns.emplace_back("qbar");
  for (const char* tag : {"model", "closed"}) {
    for (std::size_t i = 0; i < np; ++i) {
      table.columns.push_back(std::string("alpha_") + tag + "_" + std::to_string(i + 1));
      table.columns.push_back(std::string("beta_") + tag + "_" + std::to_string(i + 1));
    }
  }
  for (const char* tag : {"model", "closed"}) {
    for (std::size_t i = 0; i < np; ++i) {
      table.columns.push_back(std::string("pivot_") + tag + "_" + std::to_string(i + 1));
      table.columns.push_back(std::string("punish_") + tag + "_" + std::to_string(i + 1));
    }
  }
  table.columns.emplace_back("status");

  const std::size_t width = table.columns.size();
  table.rows = parallel_map<std::vector<std::string>>(axis.steps, [&](std::size_t k) {
    std::vector<std::string> row(width);
    const double value = axis.value(k);
    row[0] = number(value);
    try {
      const Bundle b = bundle_at(value);
      const Scenario& s = b.scenario;
      std::size_t c = 1;
      const auto eq = solve_equilibrium(s, b.taxes, b.abatement);
      for (double f : eq.fleets) row[c++] = number(f);
      row[c++] = number(eq.debris.stock);
      for (double w : national_welfare(s, b.taxes, eq).welfare) row[c++] = number(w);
      const double qbar = required_abatement(s, b.taxes);
      row[c++] = number(qbar);
      std::vector<TreatyAnalysis> analyses;
      for (auto v : {CoefficientVariant::kModelDerived, CoefficientVariant::kClosedForm}) {
        const auto coeffs = party_coefficients(s, b.taxes, v);
        for (const auto& co : coeffs) {
          row[c++] = number(co.alpha);
          row[c++] = number(co.beta);
        }
        analyses.push_back(analyze_treaty(s, coeffs, qbar, v));
      }
      for (const auto& a : analyses) {
        for (const auto& p : a.parties) {
          row[c++] = p.pivot_condition ? "true" : "false";
          row[c++] = p.punishment_condition ? "true" : "false";
        }
      }
      row[width - 1] = "ok";
    } catch (const Error& e) {
      std::fill(row.begin() + 1, row.end(), std::string());
      row[width - 1] = std::string(to_string(e.code()));
    }
    return row;
  });
  return table;
}

std::string to_csv(const SweepTable& t) {
  std::ostringstream os;
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_cell(t.columns[c]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
  return os.str();
}

json to_json(const SweepTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& cell = row[c];
      const std::string& name = t.columns[c];
      if (cell.empty()) {
        r[name] = nullptr;
      } else if (name == "status") {
        r[name] = cell;
      } else {
        r[name] = json::parse(cell);
      }
    }
    rows.push_back(r);
  }
  return {{"command", "sweep"}, {"columns", t.columns}, {"rows", rows}};
}

json verify_report(const Bundle& b, std::uint64_t seed, std::size_t batch) {
  verify::Options loaded_opts;
  loaded_opts.regulation_probe = true;
  verify::Digest digest;
  verify::run_scenario(b.scenario, b.taxes, b.abatement, digest, loaded_opts);

  SamplingOptions so;
  so.max_sectors = 4;
  so.max_tax = 0.2;
  ScenarioSampler sampler(seed, so);
  std::vector<SampledCase> cases;
  for (std::size_t k = 0; k < batch; ++k) cases.push_back(sampler.next());
  const auto parts = parallel_map<verify::Digest>(cases.size(), [&](std::size_t k) {
    verify::Digest d;
    verify::run_scenario(cases[k].scenario, cases[k].taxes, 0.0, d, {});
    return d;
  });
  for (const auto& d : parts) digest.merge(d);
  digest.finalize();

  json suites = json::array();
  for (const auto& s : digest.suites()) {
    json ce = json::array();
    for (std::size_t k = 0; k < std::min<std::size_t>(5, s.report.counterexamples.size()); ++k) {
      const auto& c = s.report.counterexamples[k];
      ce.push_back({{"input", c.input}, {"expected", c.expected}, {"got", c.got}});
    }
    suites.push_back({{"name", s.name},
                      {"kind", s.claim ? "claim" : "invariant"},
                      {"passed", s.report.passed},
                      {"cases", s.cases},
                      {"skipped", s.skipped},
                      {"max_residual", s.report.max_residual},
                      {"tolerance", s.report.tolerance},
                      {"counterexample_count", s.report.counterexamples.size()},
                      {"counterexamples", ce},
                      {"note", s.report.note}});
  }
  return {{"command", "verify"},
          {"seed", seed},
          {"batch", batch},
          {"sampler_rejections", sampler.rejections()},
          {"passed", digest.passed()},
          {"suites", suites}};
}

std::string flatten_csv(const json& report) {
  std::ostringstream os;
  os << "key,value\n";
  const json flat = report.flatten();
  for (const auto& [k, v] : flat.items()) {
    os << csv_cell(k) << ',' << csv_cell(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return os.str();
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto fail = [&](const json& e) {
    err << e.dump() << '\n';
    return e["exit_code"].get<int>();
  };
  try {
    validate_config(cfg);
    const json doc = load_document(cfg.scenario_path);
    const Bundle b = parse_bundle(doc, cfg.overrides);
    if (cfg.strict) {
      const auto flags = check_assumptions(b.scenario, b.taxes);
      if (!flags.all()) {
        std::vector<std::string> details;
        if (!flags.assumption2) details.emplace_back("assumption 2: kd must be below 1/2");
        for (std::size_t i = 0; i < flags.assumption1.size(); ++i) {
          if (!flags.assumption1[i]) {
            details.push_back("assumption 1: r_" + std::to_string(i + 1) + " must be below 1/(kd)");
          }
        }
        return fail(error_object("AssumptionViolation", "assumption check failed under --strict",
                                 details, kExitAssumption));
      }
    }

    std::string body;
    int code = kExitOk;
    if (cfg.command == Command::kSweep) {
      const auto table = sweep_table(doc, cfg.overrides, *cfg.sweep);
      body = cfg.format == Format::kCsv ? to_csv(table) : to_json(table).dump(2) + "\n";
    } else {
      json report;
      switch (cfg.command) {
        case Command::kSolve: report = solve_report(b); break;
        case Command::kRegulate: report = regulate_report(b); break;
        case Command::kTreaty: report = treaty_report(b); break;
        case Command::kVerify:
          report = verify_report(b, *cfg.seed, cfg.batch);
          if (!report["passed"].get<bool>()) code = kExitVerifyFailed;
          break;
        case Command::kSweep: break;
      }
      report["input"] = to_json(b);
      body = cfg.format == Format::kCsv ? flatten_csv(report) : report.dump(2) + "\n";
    }
    if (cfg.out_path) {
      std::ofstream f(*cfg.out_path, std::ios::binary);
      if (!f || !(f << body)) {
        return fail(error_object("IoError", "cannot write '" + *cfg.out_path + "'", {}, kExitInvalid));
      }
    } else {
      out << body;
    }
    return code;
  } catch (const RegulationNoConvergence& e) {
    json obj = error_object(std::string(to_string(e.code())), e.what(), e.details(), kExitSolver);
    obj["last"] = regulation_json(e.last(), nullptr);
    return fail(obj);
  } catch (const Error& e) {
    return fail(error_object(std::string(to_string(e.code())), e.what(), e.details(),
                             exit_code_for(e.code())));
  } catch (const std::exception& e) {
    return fail(error_object("InternalError", e.what(), {}, kExitSolver));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Open-access orbit use: equilibria, regulation, treaties and verification"};
  std::string command, format = "json", sweep, out;
  std::vector<std::string> sets;
  RunConfig cfg;
  std::uint64_t seed = 0;
  app.add_option("command", command, "solve | regulate | treaty | sweep | verify")
      ->required()
      ->check(CLI::IsMember({"solve", "regulate", "treaty", "sweep", "verify"}));
  app.add_option("--scenario", cfg.scenario_path, "scenario JSON file")->required();
  app.add_option("--set", sets, "override key=value (repeatable)");
  app.add_option("--sweep", sweep, "param:from:to:steps");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  auto* out_opt = app.add_option("--out", out, "write the report here instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (verify)");
  app.add_flag("--strict", cfg.strict, "fail with exit 4 when Assumptions 1-2 do not hold");
  app.add_option("--batch", cfg.batch, "verify: number of random scenarios")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_object("UsageError", e.what(), {}, kExitInvalid).dump() << '\n';
    return kExitInvalid;
  }
  try {
    static const std::map<std::string, Command> commands = {
        {"solve", Command::kSolve}, {"regulate", Command::kRegulate}, {"treaty", Command::kTreaty},
        {"sweep", Command::kSweep}, {"verify", Command::kVerify}};
    cfg.command = commands.at(command);
    cfg.format = format == "csv" ? Format::kCsv : Format::kJson;
    for (const auto& s : sets) cfg.overrides.push_back(parse_assignment(s));
    if (!sweep.empty()) cfg.sweep = parse_sweep(sweep);
    if (*out_opt) cfg.out_path = out;
    if (*seed_opt) cfg.seed = seed;
  } catch (const Error& e) {
    std::cerr << error_object(std::string(to_string(e.code())), e.what(), e.details(), kExitInvalid).dump()
              << '\n';
    return kExitInvalid;
  }
  return execute(cfg, std::cout, std::cerr);
}

}  // namespace orbit::cli
