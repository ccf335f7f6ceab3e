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

#include "orbit/regulation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "orbit/oracle.hpp"

namespace orbit {

WelfareReport national_welfare(const Scenario& s, const TaxSchedule& t,
                               const OpenAccessEquilibrium& eq) {
  WelfareReport rep;
  rep.survival = eq.debris.survival;
  rep.welfare.assign(s.n_markets, 0.0);
  rep.gross_value.assign(s.n_markets, 0.0);
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    double served = 0.0;
    for (std::size_t i = 0; i < s.n_sectors; ++i) served += (1.0 - t(i, j)) * eq.fleets[i];
    rep.gross_value[j] = s.prices[j] * served;
    rep.welfare[j] = rep.survival * rep.gross_value[j];
  }
  return rep;
}

WelfareReport national_welfare(const Scenario& s, const TaxSchedule& t, double abatement) {
  return national_welfare(s, t, solve_equilibrium(s, t, abatement));
}

namespace {

void check_pair(const Scenario& s, std::size_t sector, std::size_t market) {
  if (sector >= s.n_sectors || market >= s.n_markets) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector or market index out of range");
  }
}

void require_interior(const OpenAccessEquilibrium& eq) {
  if (std::find(eq.active.begin(), eq.active.end(), false) != eq.active.end()) {
    throw Error(ErrorCode::kActiveSetChange,
                "a sector is pinned at zero; welfare derivatives are one-sided");
  }
}

}  // namespace

ChannelDecomposition welfare_channels(const Scenario& s, const TaxSchedule& t,
                                      const OpenAccessEquilibrium& eq,
                                      const FleetDerivatives& derivs, std::size_t sector,
                                      std::size_t market) {
  check_pair(s, sector, market);
  const std::size_t i = sector, j = market;
  const double survival = eq.debris.survival;
  double gross = 0.0, fleet_slope = 0.0, others = 0.0;
  for (std::size_t ip = 0; ip < s.n_sectors; ++ip) {
    const double dS = derivs.at(ip, i, j);
    gross += (1.0 - t(ip, j)) * eq.fleets[ip];
    fleet_slope += dS;
    if (ip != i) others += (1.0 - t(ip, j)) * dS;
  }
  gross *= s.prices[j];
  ChannelDecomposition ch;
  ch.cleanup = -s.collision_coeff * s.debris_per_sat * fleet_slope * gross;
  ch.expansion = survival * s.prices[j] * others;
  ch.reduction =
      survival * s.prices[j] * (eq.fleets[i] - (1.0 - t(i, j)) * derivs.at(i, i, j));
  ch.total = ch.cleanup + ch.expansion - ch.reduction;
  return ch;
}

ChannelDecomposition welfare_channels(const Scenario& s, const TaxSchedule& t,
                                      double abatement, std::size_t sector,
                                      std::size_t market) {
  check_pair(s, sector, market);
  const auto eq = solve_equilibrium(s, t, abatement);
  require_interior(eq);
  return welfare_channels(s, t, eq, fleet_derivatives(s, t, abatement, eq), sector, market);
}

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

class ColumnObjective {
 public:
  ColumnObjective(const Scenario& s, const TaxSchedule& t, double abatement,
                  std::size_t market)
      : s_(s), base_(t), abatement_(abatement), market_(market) {}

  double value(const std::vector<double>& column) const {
    try {
      const TaxSchedule trial = with(column);
      const auto eq = solve_equilibrium(s_, trial, abatement_);
      return national_welfare(s_, trial, eq).welfare[market_];
    } catch (const Error&) {
      return kMinusInf;
    }
  }

  std::vector<double> gradient(const std::vector<double>& column) const {
    const TaxSchedule trial = with(column);
    const auto eq = solve_equilibrium(s_, trial, abatement_);
    const auto derivs = fleet_derivatives(s_, trial, abatement_, eq);
    std::vector<double> g(s_.n_sectors);
    for (std::size_t i = 0; i < s_.n_sectors; ++i) {
      g[i] = welfare_channels(s_, trial, eq, derivs, i, market_).total;
    }
    return g;
  }

 private:
  TaxSchedule with(const std::vector<double>& column) const {
    TaxSchedule trial = base_;
    trial.set_column(market_, column);
    return trial;
  }

  const Scenario& s_;
  const TaxSchedule& base_;
  double abatement_;
  std::size_t market_;
};

struct Candidate {
  std::vector<double> column;
  double value = kMinusInf;
};

// a beats b: clearly higher welfare, or a near tie with a smaller column.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value == kMinusInf) return false;
  if (b.value == kMinusInf) return true;
  const double tie = 1e-12 * std::max(1.0, std::abs(b.value));
  if (a.value > b.value + tie) return true;
  if (a.value < b.value - tie) return false;
  return std::lexicographical_compare(a.column.begin(), a.column.end(), b.column.begin(),
                                      b.column.end());
}

std::vector<double> clamp_box(std::vector<double> x) {
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

Candidate projected_newton(const ColumnObjective& f, std::vector<double> x) {
  const std::size_t n = x.size();
  x = clamp_box(std::move(x));
  Candidate cur{x, f.value(x)};
  if (cur.value == kMinusInf) return cur;
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> g;
    try {
      g = f.gradient(cur.column);
    } catch (const Error&) {
      break;
    }
    std::vector<std::size_t> free;
    double gnorm = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double v = cur.column[a];
      if ((v <= 0.0 && g[a] < 0.0) || (v >= 1.0 && g[a] > 0.0)) continue;
      free.push_back(a);
      gnorm = std::max(gnorm, std::abs(g[a]));
    }
    if (free.empty() || gnorm < 1e-14) break;

    const auto m = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd hess(m, m);
    Eigen::VectorXd grad(m);
    bool hessian_ok = true;
    for (Eigen::Index a = 0; a < m; ++a) {
      grad(a) = g[free[a]];
      const double v = cur.column[free[a]];
      const double h = 1e-6;
      std::vector<double> up = cur.column, dn = cur.column;
      double span = 2.0 * h;
      if (v + h > 1.0) {
        dn[free[a]] = v - h;
        span = h;
      } else if (v - h < 0.0) {
        up[free[a]] = v + h;
        span = h;
      } else {
        up[free[a]] = v + h;
        dn[free[a]] = v - h;
      }
      try {
        const auto gu = f.gradient(up);
        const auto gd = f.gradient(dn);
        for (Eigen::Index b = 0; b < m; ++b) hess(b, a) = (gu[free[b]] - gd[free[b]]) / span;
      } catch (const Error&) {
        hessian_ok = false;
        break;
      }
    }
    std::vector<Eigen::VectorXd> directions;
    if (hessian_ok) {
      const Eigen::MatrixXd neg = -0.5 * (hess + hess.transpose());
      Eigen::LLT<Eigen::MatrixXd> llt(neg);
      if (llt.info() == Eigen::Success) directions.push_back(llt.solve(grad));
    }
    directions.push_back(grad);

    bool moved = false;
    for (const auto& dir : directions) {
      double step = 1.0;
      for (int ls = 0; ls < 60 && !moved; ++ls, step *= 0.5) {
        std::vector<double> trial = cur.column;
        for (Eigen::Index a = 0; a < m; ++a) trial[free[a]] += step * dir(a);
        trial = clamp_box(std::move(trial));
        const double v = f.value(trial);
        if (v > cur.value) {
          double shift = 0.0;
          for (std::size_t a = 0; a < n; ++a) {
            shift = std::max(shift, std::abs(trial[a] - cur.column[a]));
          }
          const double gain = v - cur.value;
          cur = {std::move(trial), v};
          moved = true;
          if (shift < 1e-13 || gain <= 1e-16 * std::max(1.0, std::abs(v))) return cur;
        }
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  return cur;
}

double coarse_step(std::size_t dims) {
  switch (dims) {
    case 1: return 0.05;
    case 2: return 0.1;
    case 3: return 0.25;
    default: return 0.5;
  }
}

Candidate coarse_grid(const ColumnObjective& f, std::size_t dims) {
  const double step = coarse_step(dims);
  const auto ticks = static_cast<std::size_t>(std::llround(1.0 / step)) + 1;
  std::size_t total = 1;
  for (std::size_t a = 0; a < dims; ++a) total *= ticks;
  Candidate best;
  std::vector<double> x(dims);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t a = dims; a-- > 0;) {
      x[a] = std::min(1.0, static_cast<double>(c % ticks) * step);
      c /= ticks;
    }
    Candidate cand{x, f.value(x)};
    if (better(cand, best)) best = std::move(cand);
  }
  return best;
}

}  // namespace

BestResponse best_response(const Scenario& s, const TaxSchedule& t, double abatement,
                           std::size_t market) {
  require_valid(s);
  if (market >= s.n_markets) throw Error(ErrorCode::kIndexOutOfRange, "market out of range");
  if (const auto bad = validate_taxes(s, t); !bad.empty()) {
    throw Error(ErrorCode::kValidationError, "invalid tax schedule", bad);
  }
  const std::size_t n = s.n_sectors;
  const ColumnObjective f(s, t, abatement, market);
  const Candidate grid = coarse_grid(f, n);

  std::vector<std::vector<double>> starts = {std::vector<double>(n, 0.0),
                                             std::vector<double>(n, 1.0),
                                             std::vector<double>(n, 0.5), t.column(market)};
  if (grid.value != kMinusInf) starts.push_back(grid.column);

  Candidate best = grid;
  for (const auto& start : starts) {
    Candidate c = projected_newton(f, start);
    if (better(c, best)) best = std::move(c);
  }
  if (best.value == kMinusInf ||
      best.value < grid.value - 1e-12 * std::max(1.0, std::abs(grid.value))) {
    throw Error(ErrorCode::kSolverFailure,
                "tax optimisation found no point at least as good as the grid probes");
  }
  return {best.column, best.value, grid.value};
}

std::vector<double> best_response_taxes(const Scenario& s, const TaxSchedule& t,
                                        double abatement, std::size_t market) {
  return best_response(s, t, abatement, market).column;
}

RegulationNoConvergence::RegulationNoConvergence(RegulatoryEquilibrium last)
    : Error(ErrorCode::kNoConvergence,
            [&] {
              std::ostringstream os;
              os.precision(17);
              os << "regulatory iteration stopped after " << last.iterations
                 << " iterations with update " << last.max_update;
              return os.str();
            }(),
            [&] {
              std::vector<std::string> out;
              for (double v : last.taxes.flat()) {
                std::ostringstream os;
                os.precision(17);
                os << v;
                out.push_back(os.str());
              }
              return out;
            }()),
      last_(std::move(last)) {}

namespace {

double probe_step(std::size_t sectors) { return sectors <= 2 ? 1e-3 : 0.02; }

}  // namespace

RegulatoryEquilibrium regulatory_equilibrium(const Scenario& s, double abatement,
                                             const TaxSchedule& start,
                                             RegulationOptions options) {
  require_valid(s);
  if (const auto bad = validate_taxes(s, start); !bad.empty()) {
    throw Error(ErrorCode::kValidationError, "invalid starting tax schedule", bad);
  }
  RegulatoryEquilibrium out;
  out.taxes = start;
  const std::size_t nm = s.n_markets;
  const bool parallel = std::thread::hardware_concurrency() > 1 && nm > 1;

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::vector<std::future<std::vector<double>>> jobs;
    for (std::size_t j = 0; j < nm; ++j) {
      jobs.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                [&, j] { return best_response_taxes(s, out.taxes, abatement, j); }));
    }
    TaxSchedule next = out.taxes;
    double update = 0.0;
    for (std::size_t j = 0; j < nm; ++j) {
      const auto reply = jobs[j].get();
      for (std::size_t i = 0; i < s.n_sectors; ++i) {
        const double v = (1.0 - options.damping) * out.taxes(i, j) + options.damping * reply[i];
        update = std::max(update, std::abs(v - out.taxes(i, j)));
        next(i, j) = v;
      }
    }
    out.taxes = std::move(next);
    out.iterations = it + 1;
    out.max_update = update;
    out.trace.push_back(update);
    if (update < options.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.equilibrium = solve_equilibrium(s, out.taxes, abatement, SolveOptions{false});
  if (!out.converged) throw RegulationNoConvergence(std::move(out));

  if (options.deviation_probe && s.n_sectors <= 3) {
    out.deviation_step = probe_step(s.n_sectors);
    const auto probe = oracle::deviation_probe_taxes(s, out.taxes, abatement, out.deviation_step);
    out.deviation_checked = true;
    out.deviation_gain = probe.max_residual;
  }
  return out;
}

AssumptionThree check_assumption_three(const Scenario& s, double abatement,
                                       std::size_t sector, std::size_t market) {
  check_pair(s, sector, market);
  const TaxSchedule zero = TaxSchedule::zeros(s);
  const auto eq = solve_equilibrium(s, zero, abatement);
  require_interior(eq);
  const auto derivs = fleet_derivatives(s, zero, abatement, eq);
  double slope = 0.0;
  for (std::size_t ip = 0; ip < s.n_sectors; ++ip) slope += derivs.at(ip, sector, market);
  const double total = eq.total_fleet();
  const double kd = s.marginal_risk();
  const double survival = eq.debris.survival;
  AssumptionThree out;
  out.semi_elasticity = slope / total;
  out.lhs = -kd * slope;
  out.rhs = survival * (eq.fleets[sector] / total - out.semi_elasticity);
  out.holds = out.lhs > out.rhs;
  out.literal_holds = -kd * out.semi_elasticity > out.rhs;
  return out;
}

}  // namespace orbit
