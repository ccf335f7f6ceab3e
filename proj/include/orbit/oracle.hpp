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

#ifndef ORBIT_ORACLE_HPP_
#define ORBIT_ORACLE_HPP_

// Brute-force verifiers. Nothing here calls the dense equilibrium solve, the
// analytic derivative code or the tax optimiser: every check is computed from
// the model primitives by iteration, enumeration or finite differences.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "orbit/scenario.hpp"

namespace orbit::oracle {

struct Counterexample {
  std::string input;
  double expected = 0.0;
  double got = 0.0;
};

struct OracleReport {
  std::string target;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::vector<Counterexample> counterexamples;
  bool passed = false;
  std::string note;  // certification radius, caveats

  // Records |expected - got| and a counterexample when it exceeds tolerance.
  void record(const std::string& input, double expected, double got);
  // Records a failed qualitative check (a sign, a boolean).
  void violate(const std::string& input, double expected, double got);
  // Folds another report on the same target into this one.
  void merge(const OracleReport& other);
  // passed iff no counterexamples and max_residual <= tolerance.
  void finalize();
};

struct IterationOptions {
  double damping = 0.5;
  // Caps damping at 1 / (1 + rho), rho = (n_s - 1) max_i kd r_i, which keeps
  // the synchronous map contracting when many sectors crowd each other.
  bool safe_damping = true;
  double tolerance = 1e-12;
  std::size_t max_iterations = 100000;
};

// Damped synchronous best-response iteration from S = 0 with negative
// responses clamped to zero.
std::vector<double> iterate_open_access(const Scenario& s, const TaxSchedule& t,
                                        double abatement, IterationOptions options = {});

// W_j for every market, with fleets from iterate_open_access.
std::vector<double> welfare(const Scenario& s, const TaxSchedule& t, double abatement);

// Fleets in extended precision from the aggregate interior solution
//   S_tot = phi K / (1 + kd K),  K = sum_i P_i / m_i,
//   S_i = P_i (phi - kd S_tot) / m_i.
// Throws kActiveSetChange when some sector would be negative.
std::vector<long double> fleets_extended(const Scenario& s, const TaxSchedule& t,
                                         double abatement);

// Central difference of every S_l in tau_{sector,market} on fleets_extended,
// h = 1e-6 * max(1, |tau|).
std::vector<double> fleet_tax_derivative(const Scenario& s, const TaxSchedule& t, double abatement,
                                         std::size_t sector, std::size_t market);

// Welfare in extended precision from the aggregate interior solution
//   S_tot = phi K / (1 + kd K),  K = sum_i P_i / m_i,
//   S_i = P_i (phi - kd S_tot) / m_i.
// Throws kActiveSetChange when some sector would be negative.
std::vector<long double> welfare_extended(const Scenario& s, const TaxSchedule& t,
                                          double abatement);

// Central difference of W_market in tau_{sector,market'} on welfare_extended,
// h = 1e-6 * max(1, |tau|).
double welfare_tax_derivative(const Scenario& s, const TaxSchedule& t, double abatement,
                              std::size_t sector, std::size_t tax_market,
                              std::size_t welfare_market);

struct GridResult {
  std::vector<double> point;
  double value = 0.0;
  std::size_t evaluations = 0;
};

using BoxFunction = std::function<double(std::span<const double>)>;

inline constexpr std::size_t kGridBudget = 100'000'000;

// Exhaustive search on the regular grid over [lo, hi]^dims, corners included.
// Ties go to the lexicographically smallest point. `f` must be safe to call
// concurrently.
GridResult grid_maximize(const BoxFunction& f, std::size_t dims, double step,
                         double lo = 0.0, double hi = 1.0);

using ScalarFunction = std::function<double(std::span<const double>)>;

// Central difference with h = 1e-6 * max(1, |x_index|).
double finite_difference(const ScalarFunction& f, std::span<const double> x,
                         std::size_t index);

// Root of a monotone function on a sign-changing bracket.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tolerance = 1e-15, int max_iterations = 400);

struct LinearBenefit {
  double alpha = 0.0;
  double beta = 0.0;
};

// Unilateral deviations q' over [0, Qbar + 1] for every party; a deviation
// improving the abatement payoff by more than 1e-9 is a counterexample.
OracleReport deviation_search_abatement(const Scenario& s,
                                        std::span<const LinearBenefit> benefits,
                                        const AbatementProfile& profile, double qbar,
                                        double step);

// For every market, grid over its own tax column holding the rest fixed and
// report the largest welfare gain over the incumbent schedule. Fails when
// some gain exceeds `gain_tolerance`. Sectors must number at most three.
OracleReport deviation_probe_taxes(const Scenario& s, const TaxSchedule& taxes,
                                   double abatement, double step,
                                   double gain_tolerance = 1e-6);

}  // namespace orbit::oracle

#endif  // ORBIT_ORACLE_HPP_
