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

#ifndef ORBIT_SAMPLING_HPP_
#define ORBIT_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

#include "orbit/scenario.hpp"

namespace orbit {

// Parameter ranges: p, m in [0.1, 10], k in [0, 0.3], d in [0.5, 2],
// D0 in [0, 8], X and c in [0.1, 5]. Dbar is a uniform [0.5, 0.95] fraction
// of the zero-abatement debris stock, so some abatement is always needed.
struct SamplingOptions {
  std::size_t min_sectors = 1;
  std::size_t max_sectors = 6;
  std::size_t max_extra_markets = 0;  // markets beyond the sector count
  double max_tax = 0.0;               // taxes drawn from [0, max_tax]
  bool require_interior = true;       // every sector active at Q = 0
  std::size_t max_attempts = 1'000'000;
};

struct SampledCase {
  Scenario scenario;
  TaxSchedule taxes;
};

// Rejection sampler over valid worlds satisfying Assumptions 1 and 2 with
// survival in [0, 1] at the zero-abatement equilibrium.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(std::uint64_t seed, SamplingOptions options = {});

  SampledCase next();
  std::size_t rejections() const { return rejections_; }

 private:
  double uniform(double lo, double hi);

  std::mt19937_64 rng_;
  SamplingOptions options_;
  std::size_t rejections_ = 0;
};

}  // namespace orbit

#endif  // ORBIT_SAMPLING_HPP_
