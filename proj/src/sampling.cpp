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

#include "orbit/sampling.hpp"

#include <algorithm>

#include "orbit/open_access.hpp"

namespace orbit {

ScenarioSampler::ScenarioSampler(std::uint64_t seed, SamplingOptions options)
    : rng_(seed), options_(options) {
  if (options_.min_sectors == 0 || options_.max_sectors < options_.min_sectors) {
    throw Error(ErrorCode::kInvalidArgument, "sector range must satisfy 1 <= min <= max");
  }
}

double ScenarioSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

SampledCase ScenarioSampler::next() {
  for (std::size_t attempt = 0; attempt < options_.max_attempts; ++attempt) {
    Scenario s;
    s.n_sectors = std::uniform_int_distribution<std::size_t>(options_.min_sectors,
                                                             options_.max_sectors)(rng_);
    s.n_markets = s.n_sectors + std::uniform_int_distribution<std::size_t>(
                                    0, options_.max_extra_markets)(rng_);
    s.treaty_parties = s.n_markets;
    s.prices.resize(s.n_markets);
    s.costs.resize(s.n_sectors);
    for (double& p : s.prices) p = uniform(0.1, 10.0);
    for (double& m : s.costs) m = uniform(0.1, 10.0);
    s.collision_coeff = uniform(0.0, 0.3);
    s.debris_per_sat = uniform(0.5, 2.0);
    s.legacy_debris = uniform(0.0, 8.0);
    s.catastrophe_damages = uniform(0.1, 5.0);
    s.abatement_cost = uniform(0.1, 5.0);
    const double fraction = uniform(0.5, 0.95);

    TaxSchedule t(s.n_sectors, s.n_markets);
    if (options_.max_tax > 0.0) {
      for (std::size_t i = 0; i < s.n_sectors; ++i) {
        for (std::size_t j = 0; j < s.n_markets; ++j) t(i, j) = uniform(0.0, options_.max_tax);
      }
    }

    s.catastrophe_threshold = 1.0;
    if (!check_assumptions(s, t).all()) {
      ++rejections_;
      continue;
    }
    try {
      const auto eq = solve_equilibrium(s, t, 0.0);
      const bool interior =
          std::all_of(eq.active.begin(), eq.active.end(), [](bool a) { return a; });
      if ((options_.require_interior && !interior) || !(eq.debris.stock > 0.0)) {
        ++rejections_;
        continue;
      }
      s.catastrophe_threshold = fraction * eq.debris.stock;
    } catch (const Error&) {
      ++rejections_;
      continue;
    }
    return {s, t};
  }
  throw Error(ErrorCode::kBudgetExceeded, "sampler exhausted its attempt budget");
}

}  // namespace orbit
