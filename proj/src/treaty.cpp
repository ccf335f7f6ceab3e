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

#include "orbit/treaty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orbit/regulation.hpp"

namespace orbit {

std::string_view to_string(CoefficientVariant v) {
  return v == CoefficientVariant::kModelDerived ? "model-derived" : "closed-form";
}

namespace {

std::size_t party_count(const Scenario& s) { return s.treaty_parties; }

void check_party(const Scenario& s, std::size_t party) {
  if (party >= party_count(s)) throw Error(ErrorCode::kIndexOutOfRange, "party out of range");
}

BenefitCoefficients model_derived(const Scenario& s, const TaxSchedule& t, std::size_t party) {
  BenefitCoefficients out;
  out.variant = CoefficientVariant::kModelDerived;
  if (party >= s.n_markets) return out;
  // W_i(Q) is an exact quadratic on a fixed active set; points beyond the
  // physical range are used as polynomial evaluations only.
  const auto w = [&](double q, bool physical) {
    const auto eq = solve_equilibrium(s, t, q, SolveOptions{physical});
    return national_welfare(s, t, eq).welfare[party];
  };
  const double w0 = w(0.0, true), w1 = w(1.0, false), w2 = w(2.0, false), w3 = w(3.0, false);
  const double a2 = 0.5 * (w2 - 2.0 * w1 + w0);
  const double a1 = w1 - w0 - a2;
  out.alpha = a1;
  out.beta = -2.0 * a2;
  out.fit_residual = std::abs(w3 - (w0 + 3.0 * a1 + 9.0 * a2));
  return out;
}

BenefitCoefficients closed_form(const Scenario& s, const TaxSchedule& t, std::size_t party) {
  BenefitCoefficients out;
  out.variant = CoefficientVariant::kClosedForm;
  if (party >= s.n_markets) return out;
  const auto caps = reduced_capacities(s, t, party);
  const double k = s.collision_coeff;
  const double kd = s.marginal_risk();
  const double xi = kd * caps.focal_r;
  const double xc = kd * caps.complement_r;
  const double shared = k * (1.0 - xc) * (1.0 - xc) / (1.0 - xi * xc);
  out.alpha = caps.focal_r * caps.focal_r * shared;
  out.beta = 2.0 * k * xi * out.alpha;
  return out;
}

}  // namespace

BenefitCoefficients benefit_coefficients(const Scenario& s, const TaxSchedule& t,
                                         std::size_t party, CoefficientVariant variant) {
  require_valid(s);
  check_party(s, party);
  return variant == CoefficientVariant::kModelDerived ? model_derived(s, t, party)
                                                      : closed_form(s, t, party);
}

std::vector<CoefficientDivergence> coefficient_divergence(const Scenario& s,
                                                          const TaxSchedule& t) {
  std::vector<CoefficientDivergence> out;
  for (std::size_t p = 0; p < party_count(s); ++p) {
    CoefficientDivergence d;
    d.party = p;
    d.model = benefit_coefficients(s, t, p, CoefficientVariant::kModelDerived);
    d.closed = benefit_coefficients(s, t, p, CoefficientVariant::kClosedForm);
    d.alpha_gap = d.closed.alpha - d.model.alpha;
    d.beta_gap = d.closed.beta - d.model.beta;
    d.diverges = std::abs(d.alpha_gap) > 1e-6 || std::abs(d.beta_gap) > 1e-6;
    out.push_back(d);
  }
  return out;
}

bool averts(double total, double qbar) {
  return total >= qbar - 1e-12 * std::max(1.0, std::abs(qbar));
}

double abatement_payoff(const Scenario& s, const BenefitCoefficients& coeffs, double own,
                        double total, double qbar) {
  const double cost = 0.5 * s.abatement_cost * own * own;
  if (averts(total, qbar)) return coeffs.marginal_benefit(qbar) - cost;
  return coeffs.marginal_benefit(total) - s.catastrophe_damages - cost;
}

TreatyResponse treaty_response(const Scenario& s, const BenefitCoefficients& coeffs,
                               double qbar) {
  const double c = s.abatement_cost;
  const double beta = coeffs.beta;
  const double root = std::sqrt(beta * beta + 2.0 * c * s.catastrophe_damages);
  // beta - root, written without cancellation when beta > 0.
  const double gap = beta > 0.0 ? -2.0 * c * s.catastrophe_damages / (beta + root) : beta - root;
  TreatyResponse out;
  out.raw = qbar + gap / c;
  out.q_rest = std::clamp(out.raw, 0.0, qbar);
  out.clamped = out.raw < 0.0;
  return out;
}

double best_deviation_payoff(const Scenario& s, const BenefitCoefficients& coeffs,
                             double others, double qbar) {
  const double c = s.abatement_cost;
  if (averts(others, qbar)) return coeffs.marginal_benefit(qbar);
  const double need = qbar - others;
  const double avert = coeffs.marginal_benefit(qbar) - 0.5 * c * need * need;
  const double q = std::clamp(-coeffs.beta / c, 0.0, need);
  const double fail = coeffs.marginal_benefit(others + q) - s.catastrophe_damages -
                      0.5 * c * q * q;
  return std::max(avert, fail);
}

bool is_nash(const Scenario& s, std::span<const BenefitCoefficients> coeffs,
             const AbatementProfile& profile, double qbar, std::string* reason) {
  if (coeffs.size() != profile.contributions.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one coefficient set per party is required");
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double own = profile.contributions[i];
    const double current = abatement_payoff(s, coeffs[i], own, profile.total, qbar);
    const double best = best_deviation_payoff(s, coeffs[i], profile.total - own, qbar);
    const double gain = best - current;
    if (gain > 1e-12 * std::max(1.0, std::abs(best))) {
      if (reason) {
        std::ostringstream os;
        os.precision(17);
        os << "party " << i + 1 << " gains " << gain << " by deviating";
        *reason = os.str();
      }
      return false;
    }
  }
  return true;
}

TreatyAnalysis analyze_treaty(const Scenario& s, std::span<const BenefitCoefficients> coeffs,
                              double qbar, CoefficientVariant variant) {
  const std::size_t n = coeffs.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "treaty needs at least one party");
  const double c = s.abatement_cost;
  const double x = s.catastrophe_damages;
  TreatyAnalysis out;
  out.variant = variant;
  out.qbar = qbar;
  out.per_party_burden = qbar / static_cast<double>(n);
  const double share = out.per_party_burden;

  out.no_defection_bound = -std::numeric_limits<double>::infinity();
  out.self_enforcing = true;
  out.payoff_self_enforcing = true;
  for (const auto& b : coeffs) {
    PartyTerms p;
    p.coeffs = b;
    p.pivot_rhs = b.beta * share + 0.5 * c * share * share;
    p.pivot_condition = x >= p.pivot_rhs;
    p.stay_payoff = b.marginal_benefit(qbar) - 0.5 * c * share * share;
    p.free_ride_payoff = b.marginal_benefit(qbar - share) - x;
    p.response = treaty_response(s, b, qbar);
    p.punishment_bound = (qbar - p.response.raw);
    p.punishment_condition = share < p.punishment_bound;
    p.defection_payoff = best_deviation_payoff(s, b, p.response.q_rest, qbar);
    p.stays = p.stay_payoff >= p.defection_payoff;
    out.no_defection_bound = std::max(out.no_defection_bound, p.pivot_rhs);
    out.self_enforcing = out.self_enforcing && p.punishment_condition;
    out.payoff_self_enforcing = out.payoff_self_enforcing && p.stays;
    out.parties.push_back(p);
  }
  out.averting_sustainable = x >= out.no_defection_bound;

  std::vector<AbatementProfile> candidates = {
      AbatementProfile::from(std::vector<double>(n, 0.0))};
  if (qbar > 0.0) candidates.push_back(AbatementProfile::from(std::vector<double>(n, share)));
  for (auto& profile : candidates) {
    std::string why;
    if (is_nash(s, coeffs, profile, qbar, &why)) {
      out.nash_equilibria.push_back(std::move(profile));
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "profile q_i = " << profile.contributions.front() << ": " << why;
      out.rejected_profiles.push_back(os.str());
    }
  }
  return out;
}

std::vector<BenefitCoefficients> party_coefficients(const Scenario& s, const TaxSchedule& t,
                                                    CoefficientVariant variant) {
  std::vector<BenefitCoefficients> out;
  for (std::size_t p = 0; p < party_count(s); ++p) {
    out.push_back(benefit_coefficients(s, t, p, variant));
  }
  return out;
}

TreatyAnalysis nash_abatement(const Scenario& s, const TaxSchedule& t,
                              CoefficientVariant variant) {
  const auto coeffs = party_coefficients(s, t, variant);
  return analyze_treaty(s, coeffs, required_abatement(s, t), variant);
}

TreatyAnalysis self_enforcing_check(const Scenario& s, const TaxSchedule& t,
                                    CoefficientVariant variant) {
  return nash_abatement(s, t, variant);
}

bool BetaSensitivity::all_negative() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const BetaDerivative& e) { return e.finite_difference < 0.0; });
}

namespace {

double closed_beta(const Scenario& s, const TaxSchedule& t, std::size_t party) {
  return closed_form(s, t, party).beta;
}

}  // namespace

BetaSensitivity beta_sensitivity(const Scenario& s, const TaxSchedule& t, std::size_t party,
                                 std::size_t other) {
  require_valid(s);
  if (party >= s.n_sectors || other >= s.n_sectors || party == other) {
    throw Error(ErrorCode::kIndexOutOfRange, "beta sensitivity needs two distinct sectors");
  }
  const std::size_t i = party, j = other;
  const double k = s.collision_coeff, d = s.debris_per_sat, kd = s.marginal_risk();
  const auto prices = effective_prices(s, t);
  const double ai = prices[i], aj = prices[j];
  const double mi = s.costs[i], mj = s.costs[j];
  const double bi = kd * ai + mi, bj = kd * aj + mj;
  const double mix = kd * mj * ai + mi * bj;
  const double ti = 2.0 * k * k * k * d * mi * mj * mj * ai * ai *
                    (3.0 * mi * aj + kd * ai * (3.0 * mj + kd * aj)) /
                    (bi * bi * bi * bj * mix * mix);
  const double tj_den = ai * aj * mix;
  const double tj = 2.0 * std::pow(k, 4) * d * d * mj * mj * ai * ai * ai *
                    (kd * mj * ai + 2.0 * mi * bj) / (tj_den * tj_den);
  const double dm = -2.0 * k * k * k * d * mj * mj * ai * ai * ai *
                    (3.0 * mi * bj + kd * ai * (3.0 * mj + kd * aj)) /
                    (bi * bi * bi * bj * mix * mix);

  BetaSensitivity out;
  out.party = i;
  out.other = j;
  out.beta = closed_beta(s, t, i);

  const auto tax_fd = [&](std::size_t row, std::size_t col) {
    const double h = fd_step(t(row, col));
    TaxSchedule up = t, dn = t;
    up(row, col) += h;
    dn(row, col) -= h;
    return (closed_beta(s, up, i) - closed_beta(s, dn, i)) / (2.0 * h);
  };
  const double hm = fd_step(mi);
  Scenario su = s, sd = s;
  su.costs[i] += hm;
  sd.costs[i] -= hm;
  const double m_fd = (closed_beta(su, t, i) - closed_beta(sd, t, i)) / (2.0 * hm);

  const struct {
    const char* name;
    double analytic;
    double fd;
  } rows[] = {
      {"tau_ii", -s.prices[i] * ti, tax_fd(i, i)},
      {"tau_ij", -s.prices[j] * ti, tax_fd(i, j)},
      {"tau_ji", -s.prices[i] * tj, tax_fd(j, i)},
      {"tau_jj", -s.prices[j] * tj, tax_fd(j, j)},
      {"m_i", dm, m_fd},
  };
  for (const auto& r : rows) {
    BetaDerivative e;
    e.parameter = r.name;
    e.analytic = r.analytic;
    e.finite_difference = r.fd;
    e.signs_agree = (r.analytic > 0.0) == (r.fd > 0.0) && (r.analytic < 0.0) == (r.fd < 0.0);
    e.magnitudes_agree =
        std::abs(r.analytic - r.fd) <= 1e-5 * std::max(std::abs(r.fd), 1e-12) + 1e-12;
    if (!e.signs_agree || !e.magnitudes_agree) {
      std::ostringstream os;
      os.precision(10);
      os << "d beta_" << i + 1 << " / d " << r.name << ": analytic " << r.analytic
         << " vs finite difference " << r.fd;
      out.discrepancies.push_back(os.str());
    }
    out.entries.push_back(e);
  }
  return out;
}

TreatySupport treaty_support_check(const Scenario& s, const TaxSchedule& t,
                                   std::size_t party, std::size_t market) {
  require_valid(s);
  if (party >= s.n_sectors || market >= s.n_markets) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector or market index out of range");
  }
  const double n = static_cast<double>(party_count(s));
  const double c = s.abatement_cost, x = s.catastrophe_damages;
  const auto terms = [&](const TaxSchedule& tt) {
    const double beta = closed_beta(s, tt, party);
    const double share = required_abatement(s, tt) / n;
    const double aversion = beta * share + 0.5 * c * share * share;
    const double defection = -share - (beta - std::sqrt(beta * beta + 2.0 * c * x)) / c;
    return std::pair{aversion, defection};
  };
  const double h = fd_step(t(party, market));
  TaxSchedule up = t, dn = t;
  up(party, market) += h;
  dn(party, market) -= h;
  const auto [au, du] = terms(up);
  const auto [ad, dd] = terms(dn);
  TreatySupport out;
  out.aversion_slope = (au - ad) / (2.0 * h);
  out.defection_slope = (du - dd) / (2.0 * h);
  const double beta = closed_beta(s, t, party);
  out.side_condition = std::sqrt(beta * beta + 2.0 * c * x) - c * beta > 0.0;
  return out;
}

}  // namespace orbit
