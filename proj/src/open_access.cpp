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

#include "orbit/open_access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace orbit {

double OpenAccessEquilibrium::total_fleet() const {
  return std::accumulate(fleets.begin(), fleets.end(), 0.0);
}

double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

namespace {

double abatement_factor(const Scenario& s, double abatement) {
  return 1.0 + s.collision_coeff * (abatement - s.legacy_debris);
}

double capacity(const Scenario& s, double price, std::size_t i) {
  const double denom = s.marginal_risk() * price + s.costs[i];
  return denom > 0.0 ? price / denom : 0.0;
}

// dr_i / dP_i
double capacity_slope(const Scenario& s, double price, std::size_t i) {
  const double denom = s.marginal_risk() * price + s.costs[i];
  return s.costs[i] / (denom * denom);
}

std::vector<std::size_t> indices_of(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

Eigen::MatrixXd active_matrix(const std::vector<double>& slopes,
                              const std::vector<std::size_t>& idx) {
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      if (a != b) mat(a, b) = -slopes[idx[a]];
    }
  }
  return mat;
}

void require_shape(const Scenario& s, const TaxSchedule& t) {
  if (s.prices.size() != s.n_markets || s.costs.size() != s.n_sectors ||
      t.sectors() != s.n_sectors || t.markets() != s.n_markets) {
    throw Error(ErrorCode::kDimensionMismatch, "scenario and tax schedule shapes disagree");
  }
}

}  // namespace

LinearSystem assemble_system(const Scenario& s, const TaxSchedule& t, double abatement) {
  require_shape(s, t);
  const auto prices = effective_prices(s, t);
  const double kd = s.marginal_risk();
  const double phi = abatement_factor(s, abatement);
  LinearSystem sys;
  sys.intercepts.resize(s.n_sectors);
  sys.slopes.resize(s.n_sectors);
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    const double denom = kd * prices[i] + s.costs[i];
    sys.intercepts[i] = prices[i] * phi / denom;
    sys.slopes[i] = -kd * prices[i] / denom;
  }
  std::vector<std::size_t> all(s.n_sectors);
  std::iota(all.begin(), all.end(), 0);
  sys.determinant = active_matrix(sys.slopes, all).determinant();
  return sys;
}

std::vector<double> solve_fleets(const LinearSystem& system, std::vector<bool>& active,
                                 double* final_determinant, std::size_t* deactivations) {
  const std::size_t n = system.intercepts.size();
  if (system.slopes.size() != n || active.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "linear system shape mismatch");
  }
  std::vector<double> fleets(n, 0.0);
  std::size_t dropped = 0;
  const std::size_t max_rounds = 4 * n + 8;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const auto idx = indices_of(active);
    double det = 1.0;
    std::fill(fleets.begin(), fleets.end(), 0.0);
    if (!idx.empty()) {
      const Eigen::MatrixXd mat = active_matrix(system.slopes, idx);
      Eigen::VectorXd rhs(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t a = 0; a < idx.size(); ++a) rhs(a) = system.intercepts[idx[a]];
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(mat);
      det = lu.determinant();
      if (!(std::abs(det) > kSingularThreshold)) {
        throw Error(ErrorCode::kSingularSystem,
                    "det(I - B) is numerically zero on the active sector set");
      }
      Eigen::VectorXd x = lu.solve(rhs);
      x += lu.solve(rhs - mat * x);  // one step of iterative refinement
      for (std::size_t a = 0; a < idx.size(); ++a) fleets[idx[a]] = x(a);
    }
    if (final_determinant) *final_determinant = det;

    // Pin the most negative fleet and re-solve.
    std::size_t worst = n;
    for (std::size_t i : idx) {
      if (fleets[i] < 0.0 && (worst == n || fleets[i] < fleets[worst])) worst = i;
    }
    if (worst != n) {
      active[worst] = false;
      fleets[worst] = 0.0;
      ++dropped;
      continue;
    }

    // A pinned sector must not want to re-enter.
    const double total = std::accumulate(fleets.begin(), fleets.end(), 0.0);
    std::size_t entrant = n;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) continue;
      const double response = system.intercepts[i] + system.slopes[i] * total;
      if (response > 1e-12 * std::max(1.0, std::abs(system.intercepts[i])) &&
          response > best) {
        best = response;
        entrant = i;
      }
    }
    if (entrant != n) {
      active[entrant] = true;
      continue;
    }
    if (deactivations) *deactivations = dropped;
    return fleets;
  }
  throw Error(ErrorCode::kNoValidEquilibrium,
              "sector deactivation did not settle on a nonnegative equilibrium");
}

Decomposition decompose(const Scenario& s, const TaxSchedule& t,
                        std::span<const double> fleets) {
  const auto prices = effective_prices(s, t);
  Decomposition out;
  out.r.resize(s.n_sectors);
  out.sigma.resize(s.n_sectors);
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    out.r[i] = capacity(s, prices[i], i);
    out.sigma[i] = out.r[i] > 0.0 ? fleets[i] / out.r[i] : 0.0;
  }
  return out;
}

OpenAccessEquilibrium solve_equilibrium(const Scenario& s, const TaxSchedule& t,
                                        double abatement, SolveOptions options) {
  const LinearSystem sys = assemble_system(s, t, abatement);
  const auto prices = effective_prices(s, t);
  std::vector<bool> working(s.n_sectors);
  for (std::size_t i = 0; i < s.n_sectors; ++i) working[i] = prices[i] > 0.0;

  OpenAccessEquilibrium eq;
  eq.fleets = solve_fleets(sys, working, &eq.diagnostics.determinant,
                           &eq.diagnostics.deactivations);
  auto parts = decompose(s, t, eq.fleets);
  eq.sigma = std::move(parts.sigma);
  eq.r = std::move(parts.r);
  eq.debris = debris_stock(s, eq.total_fleet(), abatement);
  eq.active.resize(s.n_sectors);
  double residual = 0.0;
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    eq.active[i] = eq.fleets[i] > 0.0;
    if (eq.active[i]) {
      residual = std::max(residual,
                          std::abs(sector_profit(s, t, eq.fleets, abatement, i)));
    }
  }
  eq.diagnostics.max_profit_residual = residual;
  if (options.require_physical && !eq.debris.physically_valid) {
    throw Error(ErrorCode::kPhysicallyInvalid,
                "survival probability 1 - kD = " + std::to_string(eq.debris.survival) +
                    " lies outside [0,1]");
  }
  return eq;
}

ReducedCapacities reduced_capacities(const Scenario& s, const TaxSchedule& t,
                                     std::size_t nation) {
  if (nation >= std::max(s.n_markets, s.treaty_parties)) {
    throw Error(ErrorCode::kIndexOutOfRange, "nation index out of range");
  }
  const auto prices = effective_prices(s, t);
  const double kd = s.marginal_risk();
  // Q-free shape s = (I - B)^{-1} r; S = phi * s whenever phi > 0.
  LinearSystem scaled;
  scaled.intercepts.resize(s.n_sectors);
  scaled.slopes.resize(s.n_sectors);
  std::vector<bool> working(s.n_sectors);
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    scaled.intercepts[i] = capacity(s, prices[i], i);
    scaled.slopes[i] = -kd * scaled.intercepts[i];
    working[i] = prices[i] > 0.0;
  }
  const auto shape = solve_fleets(scaled, working);
  const double total = std::accumulate(shape.begin(), shape.end(), 0.0);

  ReducedCapacities out;
  if (nation < s.n_sectors) {
    out.focal_price = prices[nation];
    out.focal_r = scaled.intercepts[nation];
    const double own = shape[nation];
    const double denom = 1.0 - kd * own;
    if (!(denom > 0.0)) {
      throw Error(ErrorCode::kNoValidEquilibrium,
                  "focal sector saturates orbit (kd * s_i >= 1); no reduction exists");
    }
    out.complement_r = (total - own) / denom;
  } else {
    out.complement_r = total;
  }
  return out;
}

TwoPlayerReduction reduce_two_player(const Scenario& s, const TaxSchedule& t,
                                     double abatement, std::size_t sector) {
  if (s.n_sectors < 2) {
    throw Error(ErrorCode::kInvalidArgument, "reduction needs at least two sectors");
  }
  if (sector >= s.n_sectors) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector index out of range");
  }
  const OpenAccessEquilibrium full = solve_equilibrium(s, t, abatement);
  const ReducedCapacities caps = reduced_capacities(s, t, sector);
  const double kd = s.marginal_risk();
  const double phi = abatement_factor(s, abatement);

  TwoPlayerReduction out;
  out.focal = sector;
  out.focal_r = caps.focal_r;
  out.complement_r = caps.complement_r;
  out.system.intercepts = {phi * caps.focal_r, phi * caps.complement_r};
  out.system.slopes = {-kd * caps.focal_r, -kd * caps.complement_r};
  out.system.determinant = 1.0 - out.system.slopes[0] * out.system.slopes[1];

  auto& eq = out.equilibrium;
  std::vector<bool> working = {caps.focal_r > 0.0, caps.complement_r > 0.0};
  eq.fleets = solve_fleets(out.system, working, &eq.diagnostics.determinant,
                           &eq.diagnostics.deactivations);
  eq.r = {caps.focal_r, caps.complement_r};
  eq.sigma.resize(2);
  eq.active.resize(2);
  double residual = 0.0;
  for (std::size_t a = 0; a < 2; ++a) {
    eq.sigma[a] = eq.r[a] > 0.0 ? eq.fleets[a] / eq.r[a] : 0.0;
    eq.active[a] = eq.fleets[a] > 0.0;
    const double response =
        out.system.intercepts[a] + out.system.slopes[a] * eq.fleets[1 - a];
    if (eq.active[a]) residual = std::max(residual, std::abs(eq.fleets[a] - response));
  }
  eq.diagnostics.max_profit_residual = residual;
  eq.debris = debris_stock(s, eq.total_fleet(), abatement);
  (void)full;
  return out;
}

bool AssumptionFlags::all() const {
  return assumption2 &&
         std::all_of(assumption1.begin(), assumption1.end(), [](bool b) { return b; });
}

AssumptionFlags check_assumptions(const Scenario& s, const TaxSchedule& t) {
  require_shape(s, t);
  const auto prices = effective_prices(s, t);
  const double kd = s.marginal_risk();
  AssumptionFlags flags;
  flags.assumption1.resize(s.n_sectors);
  for (std::size_t i = 0; i < s.n_sectors; ++i) {
    flags.assumption1[i] = kd * capacity(s, prices[i], i) < 1.0;
  }
  flags.assumption2 = kd < 0.5;
  return flags;
}

FleetDerivatives fleet_derivatives(const Scenario& s, const TaxSchedule& t,
                                   double abatement, const OpenAccessEquilibrium& eq) {
  require_shape(s, t);
  const std::size_t ns = s.n_sectors;
  const std::size_t nm = s.n_markets;
  const auto prices = effective_prices(s, t);
  const double kd = s.marginal_risk();
  (void)abatement;

  FleetDerivatives out;
  out.n_sectors = ns;
  out.n_markets = nm;
  out.dS_dtau.assign(ns * ns * nm, 0.0);
  out.dS_dQ.assign(ns, 0.0);

  const auto idx = indices_of(eq.active);
  if (idx.empty()) return out;
  std::vector<double> slopes(ns);
  for (std::size_t i = 0; i < ns; ++i) slopes[i] = -kd * eq.r[i];
  const Eigen::MatrixXd inv = active_matrix(slopes, idx).inverse();
  const auto m = static_cast<Eigen::Index>(idx.size());

  // dA/dQ = k r on the active set.
  for (Eigen::Index a = 0; a < m; ++a) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < m; ++b) acc += inv(a, b) * s.collision_coeff * eq.r[idx[b]];
    out.dS_dQ[idx[a]] = acc;
  }
  // Row i of (I - B) S = A moves by dr_i * (phi - kd S_{-i}) = dr_i * sigma_i.
  for (Eigen::Index b = 0; b < m; ++b) {
    const std::size_t i = idx[b];
    const double dr_dp = capacity_slope(s, prices[i], i);
    for (std::size_t j = 0; j < nm; ++j) {
      const double shift = eq.sigma[i] * dr_dp * (-s.prices[j]);
      for (Eigen::Index a = 0; a < m; ++a) {
        out.dS_dtau[(idx[a] * ns + i) * nm + j] = inv(a, b) * shift;
      }
    }
  }
  return out;
}

namespace {

void require_interior(const OpenAccessEquilibrium& eq) {
  for (bool a : eq.active) {
    if (!a) {
      throw Error(ErrorCode::kActiveSetChange,
                  "a sector is pinned at zero; comparative statics are one-sided");
    }
  }
}

SensitivityReport make_report(const Scenario& s, DerivativeMethod method) {
  SensitivityReport rep;
  rep.n_sectors = s.n_sectors;
  rep.n_markets = s.n_markets;
  rep.method = method;
  rep.dS_dtau.assign(s.n_sectors * s.n_sectors * s.n_markets, 0.0);
  rep.d2S_dQ_dtau.assign(rep.dS_dtau.size(), 0.0);
  rep.dS_dQ.assign(s.n_sectors, 0.0);
  rep.dQbar_dtau.assign(s.n_sectors * s.n_markets, 0.0);
  return rep;
}

void finish_report(const Scenario& s, SensitivityReport& rep) {
  const std::size_t ns = s.n_sectors, nm = s.n_markets;
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      double acc = 0.0;
      for (std::size_t ip = 0; ip < ns; ++ip) acc += rep.dS(ip, i, j);
      rep.dQbar_dtau[i * nm + j] = s.debris_per_sat * acc;
    }
  }
  rep.dD_dQ = s.debris_per_sat *
                  std::accumulate(rep.dS_dQ.begin(), rep.dS_dQ.end(), 0.0) -
              1.0;
}

SensitivityReport analytic_sensitivities(const Scenario& s, const TaxSchedule& t,
                                         double abatement) {
  const auto eq = solve_equilibrium(s, t, abatement);
  require_interior(eq);
  auto rep = make_report(s, DerivativeMethod::kAnalytic);
  const auto first = fleet_derivatives(s, t, abatement, eq);
  rep.dS_dtau = first.dS_dtau;
  rep.dS_dQ = first.dS_dQ;

  // d2S/dQ dtau = k ds/dtau with s the Q-free shape: replace sigma_i by
  // 1 - kd s_{-i} in the tax derivative.
  const std::size_t ns = s.n_sectors, nm = s.n_markets;
  const double kd = s.marginal_risk();
  const double k = s.collision_coeff;
  const auto prices = effective_prices(s, t);
  std::vector<double> slopes(ns);
  for (std::size_t i = 0; i < ns; ++i) slopes[i] = -kd * eq.r[i];
  std::vector<std::size_t> all(ns);
  std::iota(all.begin(), all.end(), 0);
  const Eigen::MatrixXd mat = active_matrix(slopes, all);
  const Eigen::MatrixXd inv = mat.inverse();
  Eigen::VectorXd r(static_cast<Eigen::Index>(ns));
  for (std::size_t i = 0; i < ns; ++i) r(i) = eq.r[i];
  const Eigen::VectorXd shape = inv * r;
  const double shape_total = shape.sum();
  for (std::size_t i = 0; i < ns; ++i) {
    const double dr_dp = capacity_slope(s, prices[i], i);
    const double lever = 1.0 - kd * (shape_total - shape(i));
    for (std::size_t j = 0; j < nm; ++j) {
      const double shift = k * lever * dr_dp * (-s.prices[j]);
      for (std::size_t ip = 0; ip < ns; ++ip) {
        rep.d2S_dQ_dtau[(ip * ns + i) * nm + j] = inv(ip, i) * shift;
      }
    }
  }
  finish_report(s, rep);
  return rep;
}

SensitivityReport closed_form_sensitivities(const Scenario& s, const TaxSchedule& t,
                                            double abatement) {
  if (s.n_sectors != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "closed-form comparative statics need exactly two sectors");
  }
  const auto eq = solve_equilibrium(s, t, abatement);
  require_interior(eq);
  auto rep = make_report(s, DerivativeMethod::kClosedFormTwoPlayer);
  const std::size_t nm = s.n_markets;
  const double kd = s.marginal_risk();
  const double k = s.collision_coeff;
  const double phi = abatement_factor(s, abatement);
  const auto prices = effective_prices(s, t);
  const double x[2] = {kd * eq.r[0], kd * eq.r[1]};
  const double delta = 1.0 - x[0] * x[1];

  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t o = 1 - i;
    // S_i = phi r_i (1 - x_o) / delta
    const double own = (1.0 - x[o]) / (delta * delta);
    const double cross = -eq.r[o] * kd * (1.0 - x[o]) / (delta * delta);
    const double dr_dp = capacity_slope(s, prices[i], i);
    rep.dS_dQ[i] = k * eq.r[i] * (1.0 - x[o]) / delta;
    for (std::size_t j = 0; j < nm; ++j) {
      const double dr = -s.prices[j] * dr_dp;
      rep.dS_dtau[(i * 2 + i) * nm + j] = phi * own * dr;
      rep.dS_dtau[(o * 2 + i) * nm + j] = phi * cross * dr;
      rep.d2S_dQ_dtau[(i * 2 + i) * nm + j] = k * own * dr;
      rep.d2S_dQ_dtau[(o * 2 + i) * nm + j] = k * cross * dr;
    }
  }
  finish_report(s, rep);
  return rep;
}

std::vector<double> fleets_at(const Scenario& s, const TaxSchedule& t, double abatement,
                              const std::vector<bool>& expected_active) {
  const auto eq = solve_equilibrium(s, t, abatement, SolveOptions{false});
  if (eq.active != expected_active) {
    throw Error(ErrorCode::kActiveSetChange,
                "a sector enters or exits inside the difference stencil");
  }
  return eq.fleets;
}

SensitivityReport fd_sensitivities(const Scenario& s, const TaxSchedule& t,
                                   double abatement) {
  const auto base = solve_equilibrium(s, t, abatement);
  require_interior(base);
  auto rep = make_report(s, DerivativeMethod::kFiniteDifference);
  const std::size_t ns = s.n_sectors, nm = s.n_markets;

  const double hq = fd_step(abatement);
  {
    const auto up = fleets_at(s, t, abatement + hq, base.active);
    const auto dn = fleets_at(s, t, abatement - hq, base.active);
    for (std::size_t ip = 0; ip < ns; ++ip) rep.dS_dQ[ip] = (up[ip] - dn[ip]) / (2 * hq);
  }
  // Fleets are affine in Q on a fixed active set, so the Q leg of the mixed
  // stencil may be wide; it stays inside the region where 1 + k(Q - D0) > 0.
  const double phi = abatement_factor(s, abatement);
  const double hq2 = s.collision_coeff > 0.0
                         ? std::min(1.0, 0.25 * phi / s.collision_coeff)
                         : 1.0;
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      const double tau = t(i, j);
      const double h = fd_step(tau);
      TaxSchedule up = t, dn = t;
      up(i, j) = tau + h;
      dn(i, j) = tau - h;
      const auto su = fleets_at(s, up, abatement, base.active);
      const auto sd = fleets_at(s, dn, abatement, base.active);

      const double h2 = 1e-4 * std::max(1.0, std::abs(tau));
      TaxSchedule up2 = t, dn2 = t;
      up2(i, j) = tau + h2;
      dn2(i, j) = tau - h2;
      const auto pp = fleets_at(s, up2, abatement + hq2, base.active);
      const auto pm = fleets_at(s, up2, abatement - hq2, base.active);
      const auto mp = fleets_at(s, dn2, abatement + hq2, base.active);
      const auto mm = fleets_at(s, dn2, abatement - hq2, base.active);
      for (std::size_t ip = 0; ip < ns; ++ip) {
        rep.dS_dtau[(ip * ns + i) * nm + j] = (su[ip] - sd[ip]) / (2 * h);
        rep.d2S_dQ_dtau[(ip * ns + i) * nm + j] =
            ((pp[ip] - pm[ip]) - (mp[ip] - mm[ip])) / (4 * hq2 * h2);
      }
    }
  }
  finish_report(s, rep);
  return rep;
}

}  // namespace

SensitivityReport sensitivities(const Scenario& s, const TaxSchedule& t, double abatement,
                                DerivativeMethod method) {
  switch (method) {
    case DerivativeMethod::kAnalytic: return analytic_sensitivities(s, t, abatement);
    case DerivativeMethod::kFiniteDifference: return fd_sensitivities(s, t, abatement);
    case DerivativeMethod::kClosedFormTwoPlayer:
      return closed_form_sensitivities(s, t, abatement);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown derivative method");
}

double required_abatement(const Scenario& s, const TaxSchedule& t, AbatementMode mode) {
  const double threshold = s.catastrophe_threshold;
  const auto at = [&](double q) {
    return solve_equilibrium(s, t, q, SolveOptions{false});
  };
  const auto base = at(0.0);
  if (mode == AbatementMode::kStatic) {
    return std::max(0.0, s.debris_per_sat * base.total_fleet() + s.legacy_debris -
                             threshold);
  }
  if (base.debris.stock <= threshold) return 0.0;

  const auto slope_at = [&](double q, const OpenAccessEquilibrium& eq) {
    const auto der = fleet_derivatives(s, t, q, eq);
    return s.debris_per_sat * std::accumulate(der.dS_dQ.begin(), der.dS_dQ.end(), 0.0) -
           1.0;
  };
  const double slope0 = slope_at(0.0, base);
  if (!(slope0 < 0.0)) {
    throw Error(ErrorCode::kNonDecreasingDebris,
                "equilibrium debris does not fall with abatement (dD*/dQ >= 0)");
  }

  // Safeguarded Newton on the piecewise-affine map Q -> D*(Q).
  double lo = 0.0;  // D*(lo) > threshold
  double hi = std::numeric_limits<double>::infinity();
  double q = (threshold - base.debris.stock) / slope0;
  const double tol = 1e-13 * std::max(1.0, threshold);
  for (int iter = 0; iter < 200; ++iter) {
    const auto eq = at(q);
    const double gap = eq.debris.stock - threshold;
    if (std::abs(gap) <= tol) return q;
    if (gap > 0.0) {
      lo = q;
    } else {
      hi = q;
    }
    const double slope = slope_at(q, eq);
    double next = slope < 0.0 ? q - gap / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(q, 1.0);
    }
    if (std::isfinite(hi) && hi - lo <= 1e-15 * std::max(1.0, hi)) return 0.5 * (lo + hi);
    q = next;
  }
  throw Error(ErrorCode::kNoConvergence, "required abatement root search did not converge");
}

}  // namespace orbit
