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

#include "orbit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "orbit/open_access.hpp"
#include "orbit/regulation.hpp"
#include "orbit/treaty.hpp"

namespace orbit::verify {

Suite& Digest::suite(const std::string& name, double tolerance, bool claim) {
  for (auto& s : suites_) {
    if (s.name == name) return s;
  }
  Suite s;
  s.name = name;
  s.claim = claim;
  s.report.target = name;
  s.report.tolerance = tolerance;
  suites_.push_back(std::move(s));
  return suites_.back();
}

void Digest::merge(const Digest& other) {
  for (const auto& o : other.suites_) {
    Suite& mine = suite(o.name, o.report.tolerance, o.claim);
    mine.cases += o.cases;
    mine.skipped += o.skipped;
    mine.report.merge(o.report);
    if (mine.report.note.empty()) mine.report.note = o.report.note;
  }
}

void Digest::finalize() {
  for (auto& s : suites_) s.report.finalize();
}

bool Digest::passed() const {
  return std::all_of(suites_.begin(), suites_.end(),
                     [](const Suite& s) { return s.claim || s.report.passed; });
}

const Suite* Digest::find(const std::string& name) const {
  for (const auto& s : suites_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

std::string describe(const Scenario& s, const TaxSchedule& t, double abatement) {
  std::ostringstream os;
  os.precision(17);
  const auto list = [&](const std::vector<double>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << "p=";
  list(s.prices);
  os << " m=";
  list(s.costs);
  os << " k=" << s.collision_coeff << " d=" << s.debris_per_sat << " D0=" << s.legacy_debris
     << " Dbar=" << s.catastrophe_threshold << " X=" << s.catastrophe_damages
     << " c=" << s.abatement_cost << " N=" << s.treaty_parties << " Q=" << abatement;
  bool taxed = false;
  for (double v : t.flat()) taxed = taxed || v != 0.0;
  if (taxed) {
    os << " tau=";
    list(std::vector<double>(t.flat().begin(), t.flat().end()));
  }
  return os.str();
}

// Tolerance check: folds the gap into max_residual and records a
// counterexample when it exceeds the suite tolerance.
void measure(Suite& suite, double gap, const std::function<std::string()>& where,
             double expected, double got) {
  auto& rep = suite.report;
  if (std::isnan(gap) || gap > rep.max_residual) rep.max_residual = gap;
  if (!(gap <= rep.tolerance)) rep.violate(where(), expected, got);
}

void require(Suite& suite, bool ok, const std::function<std::string()>& where,
             double expected, double got) {
  if (!ok) suite.report.violate(where(), expected, got);
}

bool interior(const OpenAccessEquilibrium& eq) {
  return std::all_of(eq.active.begin(), eq.active.end(), [](bool a) { return a; });
}

std::string idx(const char* what, std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << what << '(' << a + 1 << ',' << b + 1 << ')';
  return os.str();
}

}  // namespace

void check_open_access(const Scenario& s, const TaxSchedule& t, double abatement,
                       Digest& out) {
  Suite& profit = out.suite("open_access.zero_profit", 1e-9);
  Suite& agree = out.suite("open_access.iteration_agreement", 1e-9);
  const auto where = [&] { return describe(s, t, abatement); };
  OpenAccessEquilibrium eq;
  try {
    eq = solve_equilibrium(s, t, abatement);
  } catch (const Error& e) {
    profit.report.violate(where() + " | " + e.what(), 0.0, 0.0);
    ++profit.cases;
    return;
  }
  ++profit.cases;
  measure(profit, eq.diagnostics.max_profit_residual, where, 0.0,
          eq.diagnostics.max_profit_residual);
  ++agree.cases;
  try {
    const auto it = oracle::iterate_open_access(s, t, abatement);
    for (std::size_t i = 0; i < it.size(); ++i) {
      measure(agree, std::abs(it[i] - eq.fleets[i]),
              [&] { return where() + " | sector " + std::to_string(i + 1); }, it[i],
              eq.fleets[i]);
    }
  } catch (const Error& e) {
    agree.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void check_reduction(const Scenario& s, const TaxSchedule& t, double abatement,
                     Digest& out) {
  Suite& suite = out.suite("reduction.fleets", 1e-9);
  if (s.n_sectors < 2) {
    ++suite.skipped;
    return;
  }
  const auto where = [&] { return describe(s, t, abatement); };
  ++suite.cases;
  try {
    const auto full = solve_equilibrium(s, t, abatement);
    const double total = full.total_fleet();
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      const auto red = reduce_two_player(s, t, abatement, i);
      const auto at = [&] { return where() + " | focal " + std::to_string(i + 1); };
      measure(suite, std::abs(red.equilibrium.fleets[0] - full.fleets[i]), at, full.fleets[i],
              red.equilibrium.fleets[0]);
      measure(suite, std::abs(red.equilibrium.fleets[1] - (total - full.fleets[i])), at,
              total - full.fleets[i], red.equilibrium.fleets[1]);
    }
  } catch (const Error& e) {
    suite.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void check_decomposition(const Scenario& s, const TaxSchedule& t, double abatement,
                         Digest& out) {
  Suite& invariance = out.suite("decomposition.r_invariance", 0.0);
  Suite& product = out.suite("decomposition.hadamard", 1e-12);
  Suite& affine = out.suite("decomposition.sigma_affine", 1e-10);
  const auto where = [&] { return describe(s, t, abatement); };
  try {
    const auto a = solve_equilibrium(s, t, abatement);
    const auto b = solve_equilibrium(s, t, abatement + 0.5, SolveOptions{false});
    const auto c = solve_equilibrium(s, t, abatement + 1.0, SolveOptions{false});
    ++invariance.cases;
    ++product.cases;
    ++affine.cases;
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      const bool same = a.r[i] == b.r[i] && a.r[i] == c.r[i];
      measure(invariance, same ? 0.0 : std::abs(a.r[i] - c.r[i]) + 1e-300, where, a.r[i],
              c.r[i]);
      if (a.active[i]) {
        measure(product, std::abs(a.sigma[i] * a.r[i] - a.fleets[i]), where, a.fleets[i],
                a.sigma[i] * a.r[i]);
      }
      if (a.active == b.active && a.active == c.active) {
        const double bend = a.sigma[i] - 2.0 * b.sigma[i] + c.sigma[i];
        measure(affine, std::abs(bend), where, 0.0, bend);
      }
    }
  } catch (const Error& e) {
    invariance.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void check_statics(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out) {
  Suite& signs = out.suite("statics.signs", 0.0);
  Suite& agree = out.suite("statics.analytic_vs_fd", 1e-5);
  agree.report.note = "analytic statics against extended-precision differences; relative gap floored at 1e-3 of the block maximum";
  const auto where = [&] { return describe(s, t, abatement); };
  SensitivityReport fd, an;
  try {
    const auto eq = solve_equilibrium(s, t, abatement);
    if (!interior(eq) || !check_assumptions(s, t).all() || s.marginal_risk() == 0.0) {
      ++signs.skipped;
      ++agree.skipped;
      return;
    }
    fd = sensitivities(s, t, abatement, DerivativeMethod::kFiniteDifference);
    an = sensitivities(s, t, abatement, DerivativeMethod::kAnalytic);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kActiveSetChange) {
      ++signs.skipped;
      ++agree.skipped;
      return;
    }
    signs.report.violate(where() + " | " + e.what(), 0.0, 0.0);
    return;
  }
  ++signs.cases;
  ++agree.cases;
  const std::size_t ns = s.n_sectors, nm = s.n_markets;
  for (std::size_t i = 0; i < ns; ++i) {
    const auto at = [&](const char* what, std::size_t j) {
      return [&, what, j] { return where() + " | " + idx(what, i, j); };
    };
    require(signs, fd.dS_dQ[i] > 0.0, at("dS_i/dQ > 0", i), 1.0, fd.dS_dQ[i]);
    for (std::size_t j = 0; j < nm; ++j) {
      require(signs, fd.dS(i, i, j) < 0.0, at("dS_i/dtau_ij < 0", j), -1.0, fd.dS(i, i, j));
      require(signs, fd.d2S(i, i, j) < 0.0, at("d2S_i/dQdtau_ij < 0", j), -1.0,
              fd.d2S(i, i, j));
      require(signs, fd.dQbar(i, j) < 0.0, at("dQbar/dtau_ij < 0", j), -1.0, fd.dQbar(i, j));
      for (std::size_t l = 0; l < ns; ++l) {
        if (l == i) continue;
        require(signs, fd.dS(l, i, j) > 0.0, at("dS_l/dtau_ij > 0", j), 1.0, fd.dS(l, i, j));
        require(signs, -fd.dS(i, i, j) > fd.dS(l, i, j), at("-dS_i/dtau_ij > dS_l/dtau_ij", j),
                -fd.dS(i, i, j), fd.dS(l, i, j));
      }
    }
  }
  require(signs, fd.dD_dQ < 0.0, [&] { return where() + " | dD/dQ < 0"; }, -1.0, fd.dD_dQ);

  // Reference: central differences of the extended-precision interior
  // solution. Fleets are affine in Q, so unit steps in Q are exact.
  std::vector<double> ref_tau(an.dS_dtau.size()), ref_mixed(an.d2S_dQ_dtau.size()), ref_q(ns);
  try {
    const auto base = oracle::fleets_extended(s, t, abatement);
    const auto next = oracle::fleets_extended(s, t, abatement + 1.0);
    for (std::size_t l = 0; l < ns; ++l) ref_q[l] = static_cast<double>(next[l] - base[l]);
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < nm; ++j) {
        const auto d0 = oracle::fleet_tax_derivative(s, t, abatement, i, j);
        const auto d1 = oracle::fleet_tax_derivative(s, t, abatement + 1.0, i, j);
        for (std::size_t l = 0; l < ns; ++l) {
          ref_tau[(l * ns + i) * nm + j] = d0[l];
          ref_mixed[(l * ns + i) * nm + j] = d1[l] - d0[l];
        }
      }
    }
  } catch (const Error& e) {
    agree.report.violate(where() + " | " + e.what(), 0.0, 0.0);
    return;
  }
  const auto compare = [&](const std::vector<double>& a, const std::vector<double>& f,
                           const char* block) {
    double scale = 0.0;
    for (double v : f) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double gap = std::abs(a[k] - f[k]) / std::max({std::abs(f[k]), 1e-3 * scale, 1e-300});
      measure(agree, gap, [&] { return where() + " | " + block + " entry " + std::to_string(k); },
              f[k], a[k]);
    }
  };
  compare(an.dS_dtau, ref_tau, "dS/dtau");
  compare(an.d2S_dQ_dtau, ref_mixed, "d2S/dQdtau");
  compare(an.dS_dQ, ref_q, "dS/dQ");
}

void check_channels(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out) {
  Suite& suite = out.suite("regulation.channel_identity", 1e-9);
  suite.report.note = "finite differences of welfare evaluated in extended precision";
  const auto where = [&] { return describe(s, t, abatement); };
  try {
    const auto eq = solve_equilibrium(s, t, abatement);
    if (!interior(eq)) {
      ++suite.skipped;
      return;
    }
    const auto derivs = fleet_derivatives(s, t, abatement, eq);
    ++suite.cases;
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      for (std::size_t j = 0; j < s.n_markets; ++j) {
        const auto ch = welfare_channels(s, t, eq, derivs, i, j);
        const double fd = oracle::welfare_tax_derivative(s, t, abatement, i, j, j);
        measure(suite, std::abs(ch.total - fd), [&] { return where() + " | " + idx("W", i, j); },
                fd, ch.total);
      }
    }
  } catch (const Error& e) {
    suite.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void check_assumption_three(const Scenario& s, double abatement, Digest& out) {
  Suite& suite = out.suite("regulation.assumption3_sign", 0.0);
  suite.report.note = "checker verdict against the extended-precision sign of dW_j/dtau_ij at zero taxes";
  Suite& literal = out.suite("regulation.assumption3_literal_form", 0.0, true);
  literal.report.note = "condition with -kd E on the left: holds must imply dW_j/dtau_ij > 0";
  Suite& all_pairs = out.suite("regulation.assumption3_all_pairs", 0.0, true);
  all_pairs.report.note = "scenarios where the checker passes for every pair (informational)";
  const TaxSchedule zero = TaxSchedule::zeros(s);
  const auto where = [&] { return describe(s, zero, abatement); };
  try {
    const auto eq = solve_equilibrium(s, zero, abatement);
    if (!interior(eq)) {
      ++suite.skipped;
      ++literal.skipped;
      return;
    }
    ++suite.cases;
    ++literal.cases;
    bool every = true;
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      for (std::size_t j = 0; j < s.n_markets; ++j) {
        const auto a = orbit::check_assumption_three(s, abatement, i, j);
        const double fd = oracle::welfare_tax_derivative(s, zero, abatement, i, j, j);
        const double scale = 1e-9 * std::max(1.0, std::abs(a.lhs) + std::abs(a.rhs));
        every = every && a.holds;
        if (std::abs(a.lhs - a.rhs) > scale) {
          require(suite, a.holds == (fd > 0.0), [&] { return where() + " | " + idx("pair", i, j); },
                  a.holds ? 1.0 : -1.0, fd);
        }
        if (a.literal_holds) {
          require(literal, fd > 0.0, [&] { return where() + " | " + idx("pair", i, j); }, 1.0, fd);
        }
      }
    }
    if (every) ++all_pairs.cases;
    else ++all_pairs.skipped;
  } catch (const Error& e) {
    suite.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void check_regulation(const Scenario& s, double abatement, const TaxSchedule& start,
                      Digest& out) {
  Suite& probe = out.suite("regulation.deviation_probe", 1e-6);
  Suite& converge = out.suite("regulation.convergence", 0.0, true);
  const auto where = [&] { return describe(s, start, abatement); };
  try {
    const auto eq = regulatory_equilibrium(s, abatement, start);
    ++converge.cases;
    if (!eq.deviation_checked) {
      ++probe.skipped;
      return;
    }
    ++probe.cases;
    std::ostringstream note;
    note << "unilateral tax-column deviations on a grid of step " << eq.deviation_step;
    probe.report.note = note.str();
    measure(probe, eq.deviation_gain, where, 0.0, eq.deviation_gain);
  } catch (const RegulationNoConvergence& e) {
    converge.report.violate(where() + " | " + e.what(), 0.0, e.last().max_update);
  } catch (const Error& e) {
    probe.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

namespace {

// Smallest-root distance y = qbar - Q_rest of X - beta y - (c/2) y^2 = 0.
double punishment_distance(double beta, double c, double x) {
  const double lo = std::max(0.0, -beta / c);
  double hi = lo + 1.0;
  const auto g = [&](double y) { return x - beta * y - 0.5 * c * y * y; };
  while (g(hi) > 0.0) hi *= 2.0;
  if (g(lo) <= 0.0) return lo;
  return oracle::bisect_root(g, lo, hi, 1e-16);
}

}  // namespace

void check_treaty(const Scenario& s, const TaxSchedule& t, Digest& out, double nash_step) {
  Suite& quad = out.suite("treaty.quadratic_welfare", 1e-10);
  Suite& fit = out.suite("treaty.fit_residual", 1e-10);
  Suite& indiff = out.suite("treaty.indifference", 1e-9);
  Suite& nash = out.suite("treaty.nash_certification", 1e-9);
  nash.report.note = "exhaustive unilateral deviation scan of every listed profile";
  Suite& conds = out.suite("treaty.condition_consistency", 0.0);
  Suite& positive = out.suite("treaty.closed_form_positive", 0.0);
  Suite& zero_nash = out.suite("treaty.all_zero_nash_when_beta_positive", 0.0, true);
  Suite& model_sign = out.suite("treaty.model_beta_positive", 0.0, true);
  const auto where = [&] { return describe(s, t, 0.0); };

  double qbar = 0.0;
  try {
    solve_equilibrium(s, t, 0.0);
    qbar = required_abatement(s, t);
  } catch (const Error& e) {
    ++quad.skipped;
    return;
  }
  const double c = s.abatement_cost, x = s.catastrophe_damages;

  // Welfare is exactly quadratic in Q on a fixed active set.
  ++quad.cases;
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    std::vector<double> w;
    for (int k = 0; k < 5; ++k) {
      const double q = 0.5 * k;
      const auto eq = solve_equilibrium(s, t, q, SolveOptions{false});
      w.push_back(national_welfare(s, t, eq).welfare[j]);
    }
    const double base = w[0] - 2.0 * w[1] + w[2];
    for (int k = 1; k < 3; ++k) {
      const double d2 = w[k] - 2.0 * w[k + 1] + w[k + 2];
      measure(quad, std::abs(d2 - base), [&] { return where() + " | market " + std::to_string(j + 1); },
              base, d2);
    }
  }

  for (auto variant : {CoefficientVariant::kModelDerived, CoefficientVariant::kClosedForm}) {
    const auto coeffs = party_coefficients(s, t, variant);
    const auto analysis = analyze_treaty(s, coeffs, qbar, variant);
    const std::string tag(to_string(variant));
    const double share = analysis.per_party_burden;
    ++indiff.cases;
    ++nash.cases;
    ++conds.cases;
    bool all_positive = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const auto& b = coeffs[i];
      const auto& p = analysis.parties[i];
      const auto at = [&](const char* what) {
        return [&, what] { return where() + " | " + tag + " party " + std::to_string(i + 1) + " " + what; };
      };
      all_positive = all_positive && b.beta > 0.0;
      if (variant == CoefficientVariant::kModelDerived) {
        ++fit.cases;
        measure(fit, b.fit_residual, at("fit"), 0.0, b.fit_residual);
        if (i < s.n_markets && s.collision_coeff > 0.0) {
          ++model_sign.cases;
          require(model_sign, b.beta > 0.0, at("beta > 0"), 1.0, b.beta);
        }
      } else if (i < s.n_sectors && s.collision_coeff > 0.0) {
        ++positive.cases;
        require(positive, b.alpha > 0.0 && b.beta > 0.0, at("alpha, beta > 0"), 1.0,
                std::min(b.alpha, b.beta));
      }
      if (!p.response.clamped) {
        const double qr = p.response.q_rest;
        const double gap = b.marginal_benefit(qbar) - 0.5 * c * (qbar - qr) * (qbar - qr) -
                           b.marginal_benefit(qr) + x;
        measure(indiff, std::abs(gap), at("indifference"), 0.0, gap);
      }
      // Payoff-level restatements with independent arithmetic.
      const double stay = b.alpha - b.beta * qbar - 0.5 * c * share * share;
      const double free_ride = b.alpha - b.beta * (qbar - share) - x;
      if (std::abs(stay - free_ride) > 1e-12 * std::max(1.0, std::abs(stay))) {
        require(conds, p.pivot_condition == (stay >= free_ride), at("pivot condition"),
                stay >= free_ride ? 1.0 : 0.0, p.pivot_condition ? 1.0 : 0.0);
      }
      const double y = punishment_distance(b.beta, c, x);
      const double alone = b.alpha - b.beta * qbar - 0.5 * c * y * y;
      if (std::abs(stay - alone) > 1e-12 * std::max(1.0, std::abs(stay))) {
        require(conds, p.punishment_condition == (stay > alone), at("punishment condition"),
                stay > alone ? 1.0 : 0.0, p.punishment_condition ? 1.0 : 0.0);
      }
    }
    std::vector<oracle::LinearBenefit> lines;
    for (const auto& b : coeffs) lines.push_back({b.alpha, b.beta});
    for (const auto& profile : analysis.nash_equilibria) {
      const auto rep = oracle::deviation_search_abatement(s, lines, profile, qbar, nash_step);
      measure(nash, rep.max_residual, [&] { return where() + " | " + tag + " listed profile"; },
              0.0, rep.max_residual);
    }
    if (all_positive && qbar > 0.0) {
      ++zero_nash.cases;
      const auto zero = AbatementProfile::from(std::vector<double>(coeffs.size(), 0.0));
      const auto rep = oracle::deviation_search_abatement(s, lines, zero, qbar, nash_step);
      require(zero_nash, rep.passed, [&] { return where() + " | " + tag + " all-zero profile"; },
              0.0, rep.max_residual);
    }
  }
}

void check_beta(const Scenario& s, const TaxSchedule& t, Digest& out) {
  Suite& own = out.suite("beta.own_sector_signs", 0.0);
  own.report.note = "finite differences of the closed-form beta_i in tau_ii, tau_ij, m_i";
  Suite& other = out.suite("beta.rival_sector_signs", 0.0, true);
  other.report.note = "finite differences of the closed-form beta_i in tau_ji, tau_jj";
  Suite& formulas = out.suite("beta.analytic_formulas", 0.0, true);
  Suite& support = out.suite("treaty_support.slopes", 0.0);
  const auto where = [&] { return describe(s, t, 0.0); };
  if (s.n_sectors < 2 || !check_assumptions(s, t).all()) {
    ++own.skipped;
    return;
  }
  try {
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      const std::size_t j = (i + 1) % s.n_sectors;
      const auto rep = beta_sensitivity(s, t, i, j);
      ++own.cases;
      ++other.cases;
      ++formulas.cases;
      for (const auto& e : rep.entries) {
        const bool mine = e.parameter == "tau_ii" || e.parameter == "tau_ij" || e.parameter == "m_i";
        require(mine ? own : other, e.finite_difference < 0.0,
                [&] { return where() + " | d beta_" + std::to_string(i + 1) + "/d " + e.parameter +
                             " (j=" + std::to_string(j + 1) + ")"; },
                -1.0, e.finite_difference);
      }
      for (const auto& msg : rep.discrepancies) formulas.report.violate(where() + " | " + msg, 0.0, 0.0);
    }
    if (required_abatement(s, t) <= 0.0) {
      ++support.skipped;
      return;
    }
    ++support.cases;
    for (std::size_t i = 0; i < s.n_sectors; ++i) {
      for (std::size_t j = 0; j < s.n_markets; ++j) {
        if (j == i) continue;
        const auto sup = treaty_support_check(s, t, i, j);
        require(support, sup.aversion_slope < 0.0,
                [&] { return where() + " | " + idx("aversion slope", i, j); }, -1.0, sup.aversion_slope);
        if (sup.side_condition) {
          require(support, sup.defection_slope > 0.0,
                  [&] { return where() + " | " + idx("defection slope", i, j); }, 1.0,
                  sup.defection_slope);
        }
      }
    }
  } catch (const Error& e) {
    own.report.violate(where() + " | " + e.what(), 0.0, 0.0);
  }
}

void run_scenario(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out,
                  const Options& options) {
  check_open_access(s, t, abatement, out);
  check_reduction(s, t, abatement, out);
  check_decomposition(s, t, abatement, out);
  check_statics(s, t, abatement, out);
  check_channels(s, t, abatement, out);
  check_assumption_three(s, abatement, out);
  check_treaty(s, t, out, options.nash_step);
  check_beta(s, t, out);
  if (options.regulation_probe) check_regulation(s, abatement, t, out);
}

}  // namespace orbit::verify
