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

#ifndef ORBIT_VERIFICATION_HPP_
#define ORBIT_VERIFICATION_HPP_

// Invariant suites pairing each solver with an oracle. A suite fails on any
// counterexample; a claim records whether a published statement holds on the
// inputs seen and never fails the digest.

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "orbit/oracle.hpp"
#include "orbit/scenario.hpp"

namespace orbit::verify {

struct Suite {
  std::string name;
  bool claim = false;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  oracle::OracleReport report;
};

class Digest {
 public:
  // Find-or-create in first-use order.
  Suite& suite(const std::string& name, double tolerance, bool claim = false);
  void merge(const Digest& other);
  void finalize();

  // Every non-claim suite passed.
  bool passed() const;
  const std::deque<Suite>& suites() const { return suites_; }
  const Suite* find(const std::string& name) const;

 private:
  std::deque<Suite> suites_;
};

struct Options {
  bool regulation_probe = false;  // grid probe of a regulatory equilibrium
  double nash_step = 1e-3;
};

void check_open_access(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out);
void check_reduction(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out);
void check_decomposition(const Scenario& s, const TaxSchedule& t, double abatement,
                         Digest& out);
void check_statics(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out);
void check_channels(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out);
void check_assumption_three(const Scenario& s, double abatement, Digest& out);
void check_regulation(const Scenario& s, double abatement, const TaxSchedule& start,
                      Digest& out);
void check_treaty(const Scenario& s, const TaxSchedule& t, Digest& out,
                  double nash_step = 1e-3);
void check_beta(const Scenario& s, const TaxSchedule& t, Digest& out);

void run_scenario(const Scenario& s, const TaxSchedule& t, double abatement, Digest& out,
                  const Options& options = {});

}  // namespace orbit::verify

#endif  // ORBIT_VERIFICATION_HPP_
