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

#ifndef ORBIT_TREATY_HPP_
#define ORBIT_TREATY_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "orbit/open_access.hpp"

namespace orbit {

enum class CoefficientVariant {
  kModelDerived,     // b_i = dW_i/dQ, fitted from the open-access model
  kClosedForm,  // two-nation closed form on reduced capacities
};

std::string_view to_string(CoefficientVariant v);

// Marginal benefit of abatement b_i(Q) = alpha - beta Q.
struct BenefitCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  CoefficientVariant variant = CoefficientVariant::kModelDerived;
  double fit_residual = 0.0;  // model-derived only

  double marginal_benefit(double total) const { return alpha - beta * total; }
};

// Party indices run over treaty parties. Parties without a market have no
// welfare at stake and get zero coefficients; markets without a sector get
// a zero focal capacity in the closed form.
BenefitCoefficients benefit_coefficients(const Scenario& s, const TaxSchedule& t,
                                         std::size_t party, CoefficientVariant variant);

struct CoefficientDivergence {
  std::size_t party = 0;
  BenefitCoefficients model;
  BenefitCoefficients closed;
  double alpha_gap = 0.0;  // closed - model
  double beta_gap = 0.0;
  bool diverges = false;   // either gap above 1e-6
};

std::vector<CoefficientDivergence> coefficient_divergence(const Scenario& s,
                                                          const TaxSchedule& t);

// Payoff to a party abating q_i when total abatement is Q.
double abatement_payoff(const Scenario& s, const BenefitCoefficients& coeffs, double own,
                        double total, double qbar);

// True when Q reaches qbar, up to a relative 1e-12 allowance for sums of
// equal shares.
bool averts(double total, double qbar);

struct TreatyResponse {
  double q_rest = 0.0;  // Q_{\i} after clamping to [0, qbar]
  double raw = 0.0;
  bool clamped = false;
};

// Remaining signatories' abatement after party i defects: the smallest root
// of b(qbar) - (c/2)(qbar - Q)^2 = b(Q) - X.
TreatyResponse treaty_response(const Scenario& s, const BenefitCoefficients& coeffs,
                               double qbar);

// Best payoff a party can reach by its own choice when the others abate
// `others` in total.
double best_deviation_payoff(const Scenario& s, const BenefitCoefficients& coeffs,
                             double others, double qbar);

struct PartyTerms {
  BenefitCoefficients coeffs;
  double pivot_rhs = 0.0;  // beta qbar/N + c (qbar/N)^2 / 2
  bool pivot_condition = false;
  double stay_payoff = 0.0;       // b(qbar) - (c/2)(qbar/N)^2
  double free_ride_payoff = 0.0;  // b(qbar (N-1)/N) - X
  double punishment_bound = 0.0;  // -(1/c)(beta - sqrt(beta^2 + 2cX))
  bool punishment_condition = false;
  TreatyResponse response;
  double defection_payoff = 0.0;  // best reply to the clamped response
  bool stays = false;             // stay_payoff >= defection_payoff
};

struct TreatyAnalysis {
  CoefficientVariant variant = CoefficientVariant::kModelDerived;
  double qbar = 0.0;
  double per_party_burden = 0.0;
  std::vector<PartyTerms> parties;
  std::vector<AbatementProfile> nash_equilibria;
  std::vector<std::string> rejected_profiles;
  double no_defection_bound = 0.0;
  bool averting_sustainable = false;
  bool self_enforcing = false;          // punishment condition for every party
  bool payoff_self_enforcing = false;   // every party prefers to stay
};

// Exact check that no party gains by a unilateral deviation.
bool is_nash(const Scenario& s, std::span<const BenefitCoefficients> coeffs,
             const AbatementProfile& profile, double qbar, std::string* reason = nullptr);

// Core analysis on given coefficients and required abatement.
TreatyAnalysis analyze_treaty(const Scenario& s, std::span<const BenefitCoefficients> coeffs,
                              double qbar, CoefficientVariant variant);

// Coefficients for every party and qbar from the responsive root.
std::vector<BenefitCoefficients> party_coefficients(const Scenario& s, const TaxSchedule& t,
                                                    CoefficientVariant variant);

// Nash listing: the all-zero and equal-share profiles, each kept only when
// it passes the exact deviation check.
TreatyAnalysis nash_abatement(const Scenario& s, const TaxSchedule& t,
                              CoefficientVariant variant);
TreatyAnalysis self_enforcing_check(const Scenario& s, const TaxSchedule& t,
                                    CoefficientVariant variant);

// Closed-form beta_i against a second sector j: analytic formulas
// next to central differences of the closed form.
struct BetaDerivative {
  std::string parameter;  // tau_ii, tau_ij, tau_ji, tau_jj, m_i
  double analytic = 0.0;
  double finite_difference = 0.0;
  bool signs_agree = false;
  bool magnitudes_agree = false;
};

struct BetaSensitivity {
  std::size_t party = 0;
  std::size_t other = 0;
  double beta = 0.0;
  std::vector<BetaDerivative> entries;
  std::vector<std::string> discrepancies;

  bool all_negative() const;  // every finite-difference entry < 0
};

BetaSensitivity beta_sensitivity(const Scenario& s, const TaxSchedule& t, std::size_t party,
                                 std::size_t other);

struct TreatySupport {
  double aversion_slope = 0.0;   // d/dtau_ij of beta qbar/N + c (qbar/N)^2 / 2
  double defection_slope = 0.0;  // d/dtau_ij of -qbar/N - (1/c)(beta - sqrt(beta^2 + 2cX))
  bool side_condition = false;   // sqrt(beta^2 + 2cX) - c beta > 0
};

// Closed-form coefficients with the responsive qbar.
TreatySupport treaty_support_check(const Scenario& s, const TaxSchedule& t,
                                   std::size_t party, std::size_t market);

}  // namespace orbit

#endif  // ORBIT_TREATY_HPP_
