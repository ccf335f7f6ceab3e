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

#include "orbit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace orbit::oracle {

void OracleReport::record(const std::string& input, double expected, double got) {
  const double gap = std::abs(expected - got);
  if (!(gap <= max_residual)) max_residual = std::isnan(gap) ? gap : std::max(max_residual, gap);
  if (!(gap <= tolerance)) counterexamples.push_back({input, expected, got});
}

void OracleReport::violate(const std::string& input, double expected, double got) {
  counterexamples.push_back({input, expected, got});
}

void OracleReport::merge(const OracleReport& other) {
  if (std::isnan(other.max_residual) || other.max_residual > max_residual) {
    max_residual = other.max_residual;
  }
  counterexamples.insert(counterexamples.end(), other.counterexamples.begin(),
                         other.counterexamples.end());
}

void OracleReport::finalize() {
  passed = counterexamples.empty() && max_residual <= tolerance;
}

std::vector<double> iterate_open_access(const Scenario& s, const TaxSchedule& t,
                                        double abatement, IterationOptions options) {
  const std::size_t n = s.n_sectors;
  const double k = s.collision_coeff;
  const double d = s.debris_per_sat;
  std::vector<double> price(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s.n_markets; ++j) price[i] += s.prices[j] * (1.0 - t(i, j));
  }
  double damping = options.damping;
  if (options.safe_damping && n > 1) {
    double widest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      widest = std::max(widest, k * d * price[i] / (k * d * price[i] + s.costs[i]));
    }
    damping = std::min(damping, 1.0 / (1.0 + static_cast<double>(n - 1) * widest));
  }
  std::vector<double> fleets(n, 0.0), next(n);
  std::vector<double> trace;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const double total = std::accumulate(fleets.begin(), fleets.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double others = total - fleets[i];
      const double response =
          price[i] * (1.0 - k * (d * others + s.legacy_debris - abatement)) /
          (k * d * price[i] + s.costs[i]);
      const double clamped = std::max(0.0, response);
      next[i] = (1.0 - damping) * fleets[i] + damping * clamped;
      change = std::max(change, std::abs(next[i] - fleets[i]));
    }
    fleets.swap(next);
    if (it + 16 >= options.max_iterations) trace.push_back(change);
    if (change < options.tolerance) return fleets;
  }
  std::vector<std::string> details;
  for (double c : trace) {
    std::ostringstream os;
    os.precision(17);
    os << c;
    details.push_back(os.str());
  }
  throw Error(ErrorCode::kNoConvergence, "best-response iteration did not converge",
              std::move(details));
}

std::vector<double> welfare(const Scenario& s, const TaxSchedule& t, double abatement) {
  const auto fleets = iterate_open_access(s, t, abatement);
  const double total = std::accumulate(fleets.begin(), fleets.end(), 0.0);
  const double debris = s.debris_per_sat * total + s.legacy_debris - abatement;
  const double survival = 1.0 - s.collision_coeff * debris;
  std::vector<double> out(s.n_markets, 0.0);
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    double served = 0.0;
    for (std::size_t i = 0; i < s.n_sectors; ++i) served += (1.0 - t(i, j)) * fleets[i];
    out[j] = survival * s.prices[j] * served;
  }
  return out;
}

std::vector<long double> fleets_extended(const Scenario& s, const TaxSchedule& t,
                                         double abatement) {
  using ld = long double;
  const std::size_t n = s.n_sectors;
  const ld k = s.collision_coeff, d = s.debris_per_sat;
  std::vector<ld> price(n, 0.0L);
  ld reach = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < s.n_markets; ++j) {
      price[i] += static_cast<ld>(s.prices[j]) * (1.0L - static_cast<ld>(t(i, j)));
    }
    reach += price[i] / static_cast<ld>(s.costs[i]);
  }
  const ld phi = 1.0L + k * (static_cast<ld>(abatement) - static_cast<ld>(s.legacy_debris));
  const ld total = phi * reach / (1.0L + k * d * reach);
  std::vector<ld> fleets(n);
  for (std::size_t i = 0; i < n; ++i) {
    fleets[i] = price[i] * (phi - k * d * total) / static_cast<ld>(s.costs[i]);
    if (fleets[i] < 0.0L) {
      throw Error(ErrorCode::kActiveSetChange, "extended-precision solution needs every sector active");
    }
  }
  return fleets;
}

std::vector<double> fleet_tax_derivative(const Scenario& s, const TaxSchedule& t, double abatement,
                                         std::size_t sector, std::size_t market) {
  if (sector >= s.n_sectors || market >= s.n_markets) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector or market index out of range");
  }
  const double tau = t(sector, market);
  const double h = 1e-6 * std::max(1.0, std::abs(tau));
  TaxSchedule up = t, dn = t;
  up(sector, market) = tau + h;
  dn(sector, market) = tau - h;
  const long double span = static_cast<long double>(up(sector, market)) - dn(sector, market);
  const auto a = fleets_extended(s, up, abatement);
  const auto b = fleets_extended(s, dn, abatement);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<double>((a[i] - b[i]) / span);
  return out;
}

std::vector<long double> welfare_extended(const Scenario& s, const TaxSchedule& t,
                                          double abatement) {
  using ld = long double;
  const std::size_t n = s.n_sectors;
  const ld k = s.collision_coeff, d = s.debris_per_sat;
  const auto fleets = fleets_extended(s, t, abatement);
  ld total = 0.0L;
  for (ld f : fleets) total += f;
  const ld survival =
      1.0L - k * (d * total + static_cast<ld>(s.legacy_debris) - static_cast<ld>(abatement));
  std::vector<ld> out(s.n_markets, 0.0L);
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    ld served = 0.0L;
    for (std::size_t i = 0; i < n; ++i) served += (1.0L - static_cast<ld>(t(i, j))) * fleets[i];
    out[j] = survival * static_cast<ld>(s.prices[j]) * served;
  }
  return out;
}

double welfare_tax_derivative(const Scenario& s, const TaxSchedule& t, double abatement,
                              std::size_t sector, std::size_t tax_market,
                              std::size_t welfare_market) {
  if (sector >= s.n_sectors || tax_market >= s.n_markets || welfare_market >= s.n_markets) {
    throw Error(ErrorCode::kIndexOutOfRange, "sector or market index out of range");
  }
  const double tau = t(sector, tax_market);
  const double h = 1e-6 * std::max(1.0, std::abs(tau));
  TaxSchedule up = t, dn = t;
  up(sector, tax_market) = tau + h;
  dn(sector, tax_market) = tau - h;
  const long double span = static_cast<long double>(up(sector, tax_market)) -
                           static_cast<long double>(dn(sector, tax_market));
  const long double diff = welfare_extended(s, up, abatement)[welfare_market] -
                           welfare_extended(s, dn, abatement)[welfare_market];
  return static_cast<double>(diff / span);
}

namespace {

std::vector<double> axis(double step, double lo, double hi) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) out.push_back(std::min(hi, lo + k * step));
  if (hi - out.back() > 1e-12 * std::max(1.0, std::abs(hi))) out.push_back(hi);
  out.back() = hi;
  return out;
}

}  // namespace

GridResult grid_maximize(const BoxFunction& f, std::size_t dims, double step, double lo,
                         double hi) {
  if (!(step > 0.0) || dims == 0 || !(hi >= lo)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs step > 0, dims >= 1, lo <= hi");
  }
  if (dims > 3) {
    throw Error(ErrorCode::kInvalidArgument, "grid search is limited to three dimensions");
  }
  const auto ticks = axis(step, lo, hi);
  double points = 1.0;
  for (std::size_t k = 0; k < dims; ++k) points *= static_cast<double>(ticks.size());
  if (points > static_cast<double>(kGridBudget)) {
    throw Error(ErrorCode::kBudgetExceeded, "grid has more than 1e8 points");
  }
  const std::size_t per_axis = ticks.size();
  std::size_t inner = 1;
  for (std::size_t k = 1; k < dims; ++k) inner *= per_axis;

  // Partition the leading axis; each chunk scans in lexicographic order and
  // keeps its first maximiser, chunks merge in order.
  struct Best {
    std::size_t index = 0;
    double value = -std::numeric_limits<double>::infinity();
    bool any = false;
  };
  const auto scan = [&](std::size_t first, std::size_t last) {
    Best best;
    std::vector<double> x(dims);
    for (std::size_t a = first; a < last; ++a) {
      for (std::size_t rest = 0; rest < inner; ++rest) {
        x[0] = ticks[a];
        std::size_t code = rest;
        for (std::size_t k = dims; k-- > 1;) {
          x[k] = ticks[code % per_axis];
          code /= per_axis;
        }
        const double v = f(x);
        if (!std::isnan(v) && (!best.any || v > best.value)) {
          best.value = v;
          best.index = a * inner + rest;
          best.any = true;
        }
      }
    }
    return best;
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), per_axis));
  std::vector<std::future<Best>> jobs;
  const std::size_t chunk = (per_axis + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t first = w * chunk;
    const std::size_t last = std::min(per_axis, first + chunk);
    if (first >= last) break;
    jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                              scan, first, last));
  }
  Best best;
  for (auto& job : jobs) {
    const Best b = job.get();
    if (b.any && (!best.any || b.value > best.value)) best = b;
  }
  if (!best.any) {
    throw Error(ErrorCode::kEvaluationFailure, "objective was NaN on the whole grid");
  }
  GridResult out;
  out.value = best.value;
  out.evaluations = static_cast<std::size_t>(points);
  out.point.resize(dims);
  std::size_t code = best.index;
  for (std::size_t k = dims; k-- > 0;) {
    out.point[k] = ticks[code % per_axis];
    code /= per_axis;
  }
  return out;
}

double finite_difference(const ScalarFunction& f, std::span<const double> x,
                         std::size_t index) {
  if (index >= x.size()) throw Error(ErrorCode::kIndexOutOfRange, "coordinate out of range");
  const double h = 1e-6 * std::max(1.0, std::abs(x[index]));
  std::vector<double> up(x.begin(), x.end()), dn(x.begin(), x.end());
  up[index] += h;
  dn[index] -= h;
  double fu = 0.0, fd = 0.0;
  try {
    fu = f(up);
    fd = f(dn);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kEvaluationFailure, std::string("stencil evaluation failed: ") + e.what());
  }
  if (!std::isfinite(fu) || !std::isfinite(fd)) {
    throw Error(ErrorCode::kEvaluationFailure, "non-finite value inside the stencil");
  }
  return (fu - fd) / (2.0 * h);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tolerance, int max_iterations) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bisection bracket does not change sign");
  }
  for (int it = 0; it < max_iterations && hi - lo > tolerance * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double abatement_payoff(const Scenario& s, const LinearBenefit& b, double own, double total,
                        double qbar) {
  const double cost = 0.5 * s.abatement_cost * own * own;
  if (total >= qbar - 1e-12 * std::max(1.0, qbar)) return b.alpha - b.beta * qbar - cost;
  return b.alpha - b.beta * total - s.catastrophe_damages - cost;
}

}  // namespace

OracleReport deviation_search_abatement(const Scenario& s,
                                        std::span<const LinearBenefit> benefits,
                                        const AbatementProfile& profile, double qbar,
                                        double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "step must be positive");
  if (benefits.size() != profile.contributions.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one benefit line per party is required");
  }
  OracleReport rep;
  rep.target = "nash_abatement";
  rep.tolerance = 1e-9;
  std::ostringstream note;
  note << "no improving unilateral deviation on the grid [0, Qbar+1] at step " << step
       << "; a grid certificate, not continuous optimality";
  rep.note = note.str();
  const auto ticks = axis(step, 0.0, qbar + 1.0);
  for (std::size_t i = 0; i < benefits.size(); ++i) {
    const double own = profile.contributions[i];
    const double others = profile.total - own;
    const double current = abatement_payoff(s, benefits[i], own, profile.total, qbar);
    double best_gain = 0.0;
    double best_q = own;
    for (double q : ticks) {
      const double gain = abatement_payoff(s, benefits[i], q, others + q, qbar) - current;
      if (gain > best_gain) {
        best_gain = gain;
        best_q = q;
      }
    }
    std::ostringstream input;
    input << "party " << i + 1 << " deviates " << own << " -> " << best_q;
    rep.record(input.str(), 0.0, best_gain);
  }
  rep.finalize();
  return rep;
}

OracleReport deviation_probe_taxes(const Scenario& s, const TaxSchedule& taxes,
                                   double abatement, double step, double gain_tolerance) {
  OracleReport rep;
  rep.target = "regulatory_equilibrium";
  rep.tolerance = gain_tolerance;
  std::ostringstream note;
  note << "unilateral tax-column deviations on the grid [0,1]^" << s.n_sectors
       << " at step " << step;
  rep.note = note.str();
  const auto incumbent = welfare(s, taxes, abatement);
  for (std::size_t j = 0; j < s.n_markets; ++j) {
    const auto objective = [&](std::span<const double> column) {
      TaxSchedule trial = taxes;
      trial.set_column(j, column);
      const auto fleets = iterate_open_access(s, trial, abatement);
      const double total = std::accumulate(fleets.begin(), fleets.end(), 0.0);
      const double survival =
          1.0 - s.collision_coeff * (s.debris_per_sat * total + s.legacy_debris - abatement);
      if (survival < 0.0 || survival > 1.0) return -std::numeric_limits<double>::infinity();
      double served = 0.0;
      for (std::size_t i = 0; i < s.n_sectors; ++i) served += (1.0 - column[i]) * fleets[i];
      return survival * s.prices[j] * served;
    };
    const auto best = grid_maximize(objective, s.n_sectors, step);
    const double gain = std::max(0.0, best.value - incumbent[j]);
    std::ostringstream input;
    input << "market " << j + 1 << " column deviation";
    rep.record(input.str(), 0.0, gain);
  }
  rep.finalize();
  return rep;
}

}  // namespace orbit::oracle
