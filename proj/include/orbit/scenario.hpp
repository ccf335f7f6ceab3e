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

#ifndef ORBIT_SCENARIO_HPP_
#define ORBIT_SCENARIO_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "orbit/errors.hpp"

namespace orbit {

// Economic and physical parameters of one orbit-use world. Sector i is
// operated from nation i, so sector indices are also market indices.
struct Scenario {
  std::size_t n_markets = 1;
  std::size_t n_sectors = 1;
  std::vector<double> prices;  // p_j, one per market
  std::vector<double> costs;   // m_i, one per sector
  double collision_coeff = 0.0;        // k
  double debris_per_sat = 0.0;         // d
  double legacy_debris = 0.0;          // D0
  double catastrophe_threshold = 1.0;  // Dbar
  double catastrophe_damages = 0.0;    // X
  double abatement_cost = 1.0;         // c
  std::size_t treaty_parties = 1;

  // kd: debris-driven collision probability created by one extra satellite.
  double marginal_risk() const { return collision_coeff * debris_per_sat; }

  // Reference worlds shared by tests, fixtures and documentation.
  static Scenario solo();
  static Scenario sym2();
  static Scenario hideb();

  bool operator==(const Scenario&) const = default;
};

// Every violated constraint, human readable; empty iff the scenario is valid.
std::vector<std::string> validate_scenario(const Scenario& s);

// Throws kValidationError carrying the violations when `s` is invalid.
void require_valid(const Scenario& s);

// Tax tau_ij levied by market j on sector i. Row-major, sectors x markets.
class TaxSchedule {
 public:
  TaxSchedule() = default;
  TaxSchedule(std::size_t n_sectors, std::size_t n_markets, double fill = 0.0)
      : sectors_(n_sectors), markets_(n_markets),
        rates_(n_sectors * n_markets, fill) {}

  static TaxSchedule zeros(const Scenario& s) {
    return TaxSchedule(s.n_sectors, s.n_markets);
  }

  std::size_t sectors() const { return sectors_; }
  std::size_t markets() const { return markets_; }

  double operator()(std::size_t i, std::size_t j) const {
    return rates_[i * markets_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return rates_[i * markets_ + j];
  }

  // Column tau_{.j}: the schedule market j applies to every sector.
  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  std::span<const double> flat() const { return rates_; }

  bool operator==(const TaxSchedule&) const = default;

 private:
  std::size_t sectors_ = 0;
  std::size_t markets_ = 0;
  std::vector<double> rates_;
};

// Shape and [0,1] range violations of `t` against `s`.
std::vector<std::string> validate_taxes(const Scenario& s, const TaxSchedule& t);

struct AbatementProfile {
  std::vector<double> contributions;  // q_i per treaty party
  double total = 0.0;                 // Q

  static AbatementProfile from(std::vector<double> contributions);
};

struct DebrisState {
  double stock = 0.0;     // D
  double survival = 1.0;  // 1 - kD
  bool catastrophe = false;
  bool physically_valid = true;  // survival within [0,1]
};

struct SurvivalProbability {
  double value = 1.0;
  bool valid = true;
};

// P_i = sum_j p_j (1 - tau_ij) for each sector.
std::vector<double> effective_prices(const Scenario& s, const TaxSchedule& t);

DebrisState debris_stock(const Scenario& s, double total_fleet, double abatement);

SurvivalProbability survival_probability(const Scenario& s, double debris);

// Y_i with the debris stock induced by the whole fleet vector.
double sector_profit(const Scenario& s, const TaxSchedule& t,
                     std::span<const double> fleets, double abatement,
                     std::size_t sector);

}  // namespace orbit

#endif  // ORBIT_SCENARIO_HPP_
