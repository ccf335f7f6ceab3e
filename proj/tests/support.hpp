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

#ifndef ORBIT_TESTS_SUPPORT_HPP_
#define ORBIT_TESTS_SUPPORT_HPP_

#include <string>

#include "doctest.h"
#include "orbit/errors.hpp"
#include "orbit/scenario.hpp"

namespace orbit::testing {

inline bool any_contains(const std::vector<std::string>& list, const std::string& needle) {
  for (const auto& s : list) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an orbit::Error");
  return ErrorCode::kInvalidArgument;
}

inline Scenario three_sector(std::vector<double> costs) {
  Scenario s;
  s.n_markets = 3;
  s.n_sectors = 3;
  s.prices = {1.0, 1.0, 1.0};
  s.costs = std::move(costs);
  s.collision_coeff = 0.1;
  s.debris_per_sat = 1.0;
  s.legacy_debris = 0.0;
  s.catastrophe_threshold = 2.0;
  s.catastrophe_damages = 1.0;
  s.abatement_cost = 1.0;
  s.treaty_parties = 3;
  return s;
}

}  // namespace orbit::testing

#endif  // ORBIT_TESTS_SUPPORT_HPP_
