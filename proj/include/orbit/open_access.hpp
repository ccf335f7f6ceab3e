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

#ifndef ORBIT_OPEN_ACCESS_HPP_
#define ORBIT_OPEN_ACCESS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "orbit/scenario.hpp"

namespace orbit {

// Best responses written as S_i = A_i + B_i * S_{-i}.
struct LinearSystem {
  std::vector<double> intercepts;  // A
  std::vector<double> slopes;      // B
  double determinant = 1.0;        // det(I - Bmat), Bmat has B_i off-diagonal in row i
};

// |det(I - B)| at or below this is treated as singular.
inline constexpr double kSingularThreshold = 1e-12;

LinearSystem assemble_system(const Scenario& s, const TaxSchedule& t, double abatement);

struct EquilibriumDiagnostics {
  double determinant = 1.0;  // of the final active subsystem
  double max_profit_residual = 0.0;
  std::size_t deactivations = 0;
};

struct OpenAccessEquilibrium {
  std::vector<double> fleets;
  std::vector<double> sigma;
  std::vector<double> r;
  DebrisState debris;
  std::vector<bool> active;  // fleet strictly positive
  EquilibriumDiagnostics diagnostics;

  double total_fleet() const;
};

struct SolveOptions {
  // Throw kPhysicallyInvalid when survival leaves [0,1] at the solution.
  bool require_physical = true;
};

// Dense solve of S = A + B S with sector deactivation for negative solutions.
OpenAccessEquilibrium solve_equilibrium(const Scenario& s, const TaxSchedule& t,
                                        double abatement, SolveOptions options = {});

// Same solve for an arbitrary system; `active` is both the starting and the
// final working set. Sectors outside it are pinned to zero.
std::vector<double> solve_fleets(const LinearSystem& system, std::vector<bool>& active,
                                 double* final_determinant = nullptr,
                                 std::size_t* deactivations = nullptr);

struct Decomposition {
  std::vector<double> sigma;
  std::vector<double> r;
};

// r_i = P_i / (kd P_i + m_i) and sigma_i = S_i / r_i (0 when r_i = 0).
Decomposition decompose(const Scenario& s, const TaxSchedule& t,
                        std::span<const double> fleets);
inline Decomposition decompose(const OpenAccessEquilibrium& eq) {
  return {eq.sigma, eq.r};
}

// Two-player reduction around one focal sector. Player 0 keeps the focal
// sector's (A_i, B_i); player 1 is a synthetic sector whose capacity r_c is
// chosen so that its best response reproduces S_{-i} exactly:
//   r_c = s_{-i} / (1 - kd s_i),  s = (I - B)^{-1} r.
// r_c does not depend on Q, so the reduced game has the structure of a
// genuine two-sector world at every abatement level.
struct TwoPlayerReduction {
  std::size_t focal = 0;
  double focal_r = 0.0;
  double complement_r = 0.0;
  LinearSystem system;
  OpenAccessEquilibrium equilibrium;
};

TwoPlayerReduction reduce_two_player(const Scenario& s, const TaxSchedule& t,
                                     double abatement, std::size_t sector);

// Q-free capacities (focal r, complement r) for a nation. Nations without a
// satellite sector get focal r = 0 and the whole fleet as complement.
struct ReducedCapacities {
  double focal_r = 0.0;
  double complement_r = 0.0;
  double focal_price = 0.0;  // P_i, zero for non-spacefaring nations
};
ReducedCapacities reduced_capacities(const Scenario& s, const TaxSchedule& t,
                                     std::size_t nation);

struct AssumptionFlags {
  std::vector<bool> assumption1;  // r_i < 1/(kd), per sector
  bool assumption2 = true;        // kd < 1/2

  bool all() const;
};

AssumptionFlags check_assumptions(const Scenario& s, const TaxSchedule& t);

enum class DerivativeMethod { kAnalytic, kFiniteDifference, kClosedFormTwoPlayer };

// Index layout: dS_dtau[(ip * n_sectors + i) * n_markets + j] = dS_ip / dtau_ij.
struct SensitivityReport {
  std::size_t n_sectors = 0;
  std::size_t n_markets = 0;
  std::vector<double> dS_dtau;
  std::vector<double> d2S_dQ_dtau;
  std::vector<double> dS_dQ;
  double dD_dQ = 0.0;
  std::vector<double> dQbar_dtau;  // [i * n_markets + j]
  DerivativeMethod method = DerivativeMethod::kAnalytic;

  double dS(std::size_t ip, std::size_t i, std::size_t j) const {
    return dS_dtau[(ip * n_sectors + i) * n_markets + j];
  }
  double d2S(std::size_t ip, std::size_t i, std::size_t j) const {
    return d2S_dQ_dtau[(ip * n_sectors + i) * n_markets + j];
  }
  double dQbar(std::size_t i, std::size_t j) const {
    return dQbar_dtau[i * n_markets + j];
  }
};

// Comparative statics at an interior equilibrium. Throws kActiveSetChange
// when some sector is (or becomes, inside the stencil) pinned at zero.
// kClosedFormTwoPlayer differentiates S_i = sigma_i r_i directly and needs
// exactly two sectors.
SensitivityReport sensitivities(const Scenario& s, const TaxSchedule& t,
                                double abatement,
                                DerivativeMethod method = DerivativeMethod::kAnalytic);

// First derivatives on the equilibrium's own active set, pinned sectors held
// at zero. Never throws on boundary sectors; used for optimisation gradients.
struct FleetDerivatives {
  std::size_t n_sectors = 0;
  std::size_t n_markets = 0;
  std::vector<double> dS_dtau;
  std::vector<double> dS_dQ;

  double at(std::size_t ip, std::size_t i, std::size_t j) const {
    return dS_dtau[(ip * n_sectors + i) * n_markets + j];
  }
};

FleetDerivatives fleet_derivatives(const Scenario& s, const TaxSchedule& t,
                                   double abatement, const OpenAccessEquilibrium& eq);

// Central-difference step used throughout: 1e-6 * max(1, |x|).
double fd_step(double x);

enum class AbatementMode {
  kResponsive,  // root of D*(Q) = Dbar with fleets re-solved at each Q
  kStatic,      // d S*(0) + D0 - Dbar, fleets held at Q = 0
};

// Abatement that holds equilibrium debris exactly at the threshold; 0 when
// no abatement is needed.
double required_abatement(const Scenario& s, const TaxSchedule& t,
                          AbatementMode mode = AbatementMode::kResponsive);

}  // namespace orbit

#endif  // ORBIT_OPEN_ACCESS_HPP_
