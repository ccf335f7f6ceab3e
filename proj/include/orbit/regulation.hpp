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

#ifndef ORBIT_REGULATION_HPP_
#define ORBIT_REGULATION_HPP_

#include <cstddef>
#include <vector>

#include "orbit/open_access.hpp"

namespace orbit {

struct WelfareReport {
  std::vector<double> welfare;      // W_j
  std::vector<double> gross_value;  // V_j = p_j sum_i (1 - tau_ij) S_i
  double survival = 1.0;
};

// Market welfare at the open-access equilibrium. Catastrophe damages are not
// part of W_j.
WelfareReport national_welfare(const Scenario& s, const TaxSchedule& t, double abatement);
WelfareReport national_welfare(const Scenario& s, const TaxSchedule& t,
                               const OpenAccessEquilibrium& eq);

// dW_j/dtau_ij split into its three channels:
//   cleanup   = -k (dD/dtau_ij) V_j
//   expansion = (1-kD) p_j sum_{i' != i} (1 - tau_i'j) dS_i'/dtau_ij
//   reduction = (1-kD) p_j [S_i - (1 - tau_ij) dS_i/dtau_ij]
//   total     = cleanup + expansion - reduction
struct ChannelDecomposition {
  double cleanup = 0.0;
  double expansion = 0.0;
  double reduction = 0.0;
  double total = 0.0;
};

// Needs an interior equilibrium; throws kActiveSetChange otherwise.
ChannelDecomposition welfare_channels(const Scenario& s, const TaxSchedule& t,
                                      double abatement, std::size_t sector,
                                      std::size_t market);

// Channels from precomputed derivatives on the equilibrium's active set.
ChannelDecomposition welfare_channels(const Scenario& s, const TaxSchedule& t,
                                      const OpenAccessEquilibrium& eq,
                                      const FleetDerivatives& derivs, std::size_t sector,
                                      std::size_t market);

struct BestResponse {
  std::vector<double> column;
  double value = 0.0;       // W_j at the returned column
  double grid_value = 0.0;  // best coarse-grid probe
};

// Market j's tax column maximising W_j over [0,1]^n_sectors with the other
// columns fixed. Multi-start projected Newton from all-zero, all-one, the
// centre, the incoming column and the best coarse-grid point; near ties go
// to the lexicographically smallest column.
BestResponse best_response(const Scenario& s, const TaxSchedule& t, double abatement,
                           std::size_t market);
std::vector<double> best_response_taxes(const Scenario& s, const TaxSchedule& t,
                                        double abatement, std::size_t market);

struct RegulationOptions {
  double damping = 0.5;
  double tolerance = 1e-8;
  std::size_t max_iterations = 10000;
  // Grid probe of unilateral deviations after convergence. Skipped when the
  // scenario has more than three sectors.
  bool deviation_probe = true;
};

struct RegulatoryEquilibrium {
  TaxSchedule taxes;
  OpenAccessEquilibrium equilibrium;
  std::size_t iterations = 0;
  bool converged = false;
  double max_update = 0.0;
  std::vector<double> trace;  // sup-norm update per iteration
  bool deviation_checked = false;
  double deviation_gain = 0.0;  // largest grid welfare gain over all markets
  double deviation_step = 0.0;
};

// Thrown by regulatory_equilibrium when the iteration cap is reached.
class RegulationNoConvergence : public Error {
 public:
  explicit RegulationNoConvergence(RegulatoryEquilibrium last);
  const RegulatoryEquilibrium& last() const noexcept { return last_; }

 private:
  RegulatoryEquilibrium last_;
};

// Damped simultaneous best-response iteration over all markets.
RegulatoryEquilibrium regulatory_equilibrium(const Scenario& s, double abatement,
                                             const TaxSchedule& start,
                                             RegulationOptions options = {});

// Tax-improves-welfare condition at zero taxes, with the total-fleet
// semi-elasticity E = (dS_tot/dtau_ij) / S_tot:
//   lhs = -kd E S_tot,  rhs = (1-kD)(S_i / S_tot - E).
// holds <=> dW_j/dtau_ij > 0 at zero taxes. literal_holds compares -kd E
// against the same rhs.
struct AssumptionThree {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double semi_elasticity = 0.0;
  bool literal_holds = false;
};

AssumptionThree check_assumption_three(const Scenario& s, double abatement,
                                       std::size_t sector, std::size_t market);

}  // namespace orbit

#endif  // ORBIT_REGULATION_HPP_
