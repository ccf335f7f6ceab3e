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

#include "orbit/scenario.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace orbit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kNoValidEquilibrium: return "NoValidEquilibrium";
    case ErrorCode::kPhysicallyInvalid: return "PhysicallyInvalid";
    case ErrorCode::kActiveSetChange: return "ActiveSetChange";
    case ErrorCode::kNonDecreasingDebris: return "NonDecreasingDebris";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kEvaluationFailure: return "EvaluationFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kOverrideError: return "OverrideError";
  }
  return "Unknown";
}

Scenario Scenario::solo() {
  Scenario s;
  s.n_markets = 1;
  s.n_sectors = 1;
  s.prices = {1.0};
  s.costs = {1.0};
  s.collision_coeff = 0.0;
  s.debris_per_sat = 1.0;
  s.legacy_debris = 0.0;
  s.catastrophe_threshold = 2.0;
  s.catastrophe_damages = 1.0;
  s.abatement_cost = 1.0;
  s.treaty_parties = 1;
  return s;
}

Scenario Scenario::sym2() {
  Scenario s;
  s.n_markets = 2;
  s.n_sectors = 2;
  s.prices = {1.0, 1.0};
  s.costs = {1.0, 1.0};
  s.collision_coeff = 0.1;
  s.debris_per_sat = 1.0;
  s.legacy_debris = 0.0;
  s.catastrophe_threshold = 2.0;
  s.catastrophe_damages = 1.0;
  s.abatement_cost = 1.0;
  s.treaty_parties = 2;
  return s;
}

Scenario Scenario::hideb() {
  Scenario s = sym2();
  s.legacy_debris = 5.0;
  return s;
}

namespace {

template <typename T>
void check(std::vector<std::string>& out, bool ok, const T& message) {
  if (!ok) out.emplace_back(message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  check(v, s.n_markets >= 1, "n_markets: must be a positive integer");
  check(v, s.n_sectors >= 1, "n_sectors: must be a positive integer");
  check(v, s.n_sectors <= s.n_markets,
        "n_sectors: must not exceed n_markets");
  check(v, s.treaty_parties >= 1, "treaty_parties: must be a positive integer");

  if (s.prices.size() != s.n_markets) {
    std::ostringstream os;
    os << "p: prices has length " << s.prices.size()
       << " but n_markets is " << s.n_markets << " (dimension mismatch)";
    v.push_back(os.str());
  }
  for (std::size_t j = 0; j < s.prices.size(); ++j) {
    if (!(finite(s.prices[j]) && s.prices[j] > 0.0)) {
      v.push_back("p: prices must be > 0 (entry " + std::to_string(j + 1) + ")");
    }
  }
  if (s.costs.size() != s.n_sectors) {
    std::ostringstream os;
    os << "m: costs has length " << s.costs.size() << " but n_sectors is "
       << s.n_sectors << " (dimension mismatch)";
    v.push_back(os.str());
  }
  for (std::size_t i = 0; i < s.costs.size(); ++i) {
    if (!(finite(s.costs[i]) && s.costs[i] > 0.0)) {
      v.push_back("m: costs must be > 0 (entry " + std::to_string(i + 1) + ")");
    }
  }
  check(v, finite(s.collision_coeff) && s.collision_coeff >= 0.0,
        "k: collision_coeff must be >= 0");
  check(v, finite(s.debris_per_sat) && s.debris_per_sat >= 0.0,
        "d: debris_per_sat must be >= 0");
  check(v, finite(s.legacy_debris) && s.legacy_debris >= 0.0,
        "D0: legacy_debris must be >= 0");
  check(v, finite(s.catastrophe_threshold) && s.catastrophe_threshold > 0.0,
        "Dbar: catastrophe_threshold must be > 0");
  check(v, finite(s.catastrophe_damages) && s.catastrophe_damages >= 0.0,
        "X: catastrophe_damages must be >= 0");
  check(v, finite(s.abatement_cost) && s.abatement_cost > 0.0,
        "c: abatement_cost must be > 0");
  return v;
}

void require_valid(const Scenario& s) {
  auto violations = validate_scenario(s);
  if (!violations.empty()) {
    const std::string message = "invalid scenario: " + violations.front();
    throw Error(ErrorCode::kValidationError, message, std::move(violations));
  }
}

std::vector<double> TaxSchedule::column(std::size_t j) const {
  std::vector<double> out(sectors_);
  for (std::size_t i = 0; i < sectors_; ++i) out[i] = (*this)(i, j);
  return out;
}

void TaxSchedule::set_column(std::size_t j, std::span<const double> values) {
  if (values.size() != sectors_ || j >= markets_) {
    throw Error(ErrorCode::kDimensionMismatch, "tax column does not fit schedule");
  }
  for (std::size_t i = 0; i < sectors_; ++i) (*this)(i, j) = values[i];
}

std::vector<std::string> validate_taxes(const Scenario& s, const TaxSchedule& t) {
  std::vector<std::string> v;
  if (t.sectors() != s.n_sectors || t.markets() != s.n_markets) {
    std::ostringstream os;
    os << "tax: schedule is " << t.sectors() << "x" << t.markets()
       << " but scenario needs " << s.n_sectors << "x" << s.n_markets
       << " (dimension mismatch)";
    v.push_back(os.str());
    return v;
  }
  for (std::size_t i = 0; i < t.sectors(); ++i) {
    for (std::size_t j = 0; j < t.markets(); ++j) {
      double r = t(i, j);
      if (!(r >= 0.0 && r <= 1.0)) {
        v.push_back("tax: rate (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ") must lie in [0,1]");
      }
    }
  }
  return v;
}

AbatementProfile AbatementProfile::from(std::vector<double> contributions) {
  AbatementProfile p;
  p.total = std::accumulate(contributions.begin(), contributions.end(), 0.0);
  p.contributions = std::move(contributions);
  return p;
}

std::vector<double> effective_prices(const Scenario& s, const TaxSchedule& t) {
  if (t.sectors() != s.n_sectors || t.markets() != s.n_markets ||
      s.prices.size() != s.n_markets) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tax schedule shape does not match scenario");
  }
  std::vector<double> out(s.n_sectors, 0.0);
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.n_markets; ++j) {
      acc += s.prices[j] * (1.0 - t(i, j));
    }
    out[i] = acc;
  }
  return out;
}

SurvivalProbability survival_probability(const Scenario& s, double debris) {
  SurvivalProbability out;
  out.value = 1.0 - s.collision_coeff * debris;
  out.valid = out.value >= 0.0 && out.value <= 1.0;
  return out;
}

DebrisState debris_stock(const Scenario& s, double total_fleet, double abatement) {
  DebrisState st;
  st.stock = s.debris_per_sat * total_fleet + s.legacy_debris - abatement;
  auto surv = survival_probability(s, st.stock);
  st.survival = surv.value;
  st.physically_valid = surv.valid;
  st.catastrophe = st.stock > s.catastrophe_threshold;
  return st;
}

double sector_profit(const Scenario& s, const TaxSchedule& t,
                     std::span<const double> fleets, double abatement,
                     std::size_t sector) {
  if (sector >= s.n_sectors) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector index out of range");
  }
  if (fleets.size() != s.n_sectors) {
    throw Error(ErrorCode::kDimensionMismatch, "fleet vector length mismatch");
  }
  const double total = std::accumulate(fleets.begin(), fleets.end(), 0.0);
  const DebrisState st = debris_stock(s, total, abatement);
  double price = 0.0;
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    price += s.prices[j] * (1.0 - t(sector, j));
  }
  const double fleet = fleets[sector];
  return st.survival * price * fleet - s.costs[sector] * fleet * fleet;
}

}  // namespace orbit
