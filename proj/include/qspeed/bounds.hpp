// Copyright 2026 The qspeed Authors
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

// Upper bounds on the time-limited success probability and the derived
// lower bounds on discrimination time.
//
// Every bound takes the joint Hamiltonian on encoding (x) ancilla, which must
// be PSD. Like the simulator, the bounds act on H - E_0 I, so a nonzero ground
// energy is removed before any norm or trace is taken. Two-state bounds use
// an ancilla of dimension 2 initialised at x_max. Values are returned raw and
// may exceed 1; use capped() for display.

#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "qspeed/states.hpp"

namespace qspeed {

inline constexpr double kGammaSmall = 3.0 / std::numbers::pi;
inline constexpr double kGammaLarge = 5.0 / std::numbers::pi;

/// 2(1 - cos k) <= gamma(k) k with gamma = 5/pi on 1 < k < 4, 3/pi elsewhere.
double gamma_factor(double k);

/// max_n gamma_factor(t E_n / hbar). Sound for every eigenvalue.
double gamma_for_spectrum(const RealVector& eigenvalues, double t, double hbar);

/// The "5/pi only if every level lies in the window" reading. Not used by any
/// bound; reported so callers can see where it differs from the max rule.
double gamma_hat_literal(const RealVector& eigenvalues, double t, double hbar);

bool gamma_readings_differ(const RealVector& eigenvalues, double t, double hbar);

/// 1 - cos(x), evaluated as 2 sin^2(x/2) to avoid cancellation.
double one_minus_cos(double x);

/// The energy level maximising 1 - cos(t E_n / hbar); the lowest such level on ties.
double cmax_energy(const HermitianOperator& h, double t, double hbar);

struct BoundReport {
  std::string bound_name;
  double value;
  double gamma_used;  // 0 when the bound does not involve gamma
  std::string inputs_digest;
  bool gamma_readings_differ = false;

  double capped() const { return value < 1.0 ? value : 1.0; }
};

/// 1/2 + sum_n (1 - cos(t E_n/hbar)) <E_n|A~+|E_n>, A~ = rho~1 - rho~0.
/// Equiprobable pair.
double proto_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h, double t,
                   double hbar);

/// 1/2 + (1 - cos(t ||H|| / hbar)) D(rho0, rho1). Only meaningful while
/// t E_n / hbar <= pi for every level; see cmax_bound for the general form.
double spectrum_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h, double t,
                      double hbar);

/// p_xmax + 2(1 - cos(t C_max / hbar)) Delta(p_xmin rho_xmin, p_xmax rho_xmax).
double cmax_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h,
                  double t, double hbar);

/// p_xmax + gamma t ||H|| Delta(p_xmin rho_xmin, p_xmax rho_xmax) / hbar.
double simple_trace_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1,
                          const HermitianOperator& h, double t, double hbar);

/// p_xmax + (gamma t / 2 hbar) [tr(H |p_xmin rho~_xmin - p_xmax rho~_xmax|)
///   + p_xmin tr(H rho~_xmin) - p_xmax tr(H rho~_xmax)].
double avg_energy_two_state_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1,
                                  const HermitianOperator& h, double t, double hbar);

/// 1/2 + gamma t tr(H |rho~1 - rho~0|) / (4 hbar), the label-averaged form
/// of the two-state average-energy bound. Equiprobable pair.
///
/// Not a valid upper bound for every Hamiltonian: averaging over a label swap
/// mixes two different protocols. See the counterexample in
/// tests/unit/test_bounds.cpp.
double avg_energy_symmetrized_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h,
                                    double t, double hbar);

/// 1/2 + gamma t tr(H (rho~0 + rho~1)) / (4 hbar). Same caveat as above.
double avg_energy_weakened_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h,
                                 double t, double hbar);

/// p_xmax + (gamma t / hbar) sum_x p_x tr(H rho~_x), gamma by the max rule.
double many_states_bound(const Ensemble& e, const HermitianOperator& h, double t, double hbar);

/// sum_x p_x tr(H rho~_x) with the ancilla at x_max.
double average_energy(const Ensemble& e, const HermitianOperator& h);

/// Earliest time at which many_states_bound can reach p_guess_target, i.e.
/// inf { t : many_states_bound(t) >= target }. Returns 0 for targets at or
/// below p_xmax. Throws UnreachableError when the average energy is 0 and the
/// target exceeds p_xmax.
///
/// When the infimum sits on the left edge of a 5/pi window the bound only
/// reaches the target just after the returned time.
double min_distinguish_time(const Ensemble& e, const HermitianOperator& h, double hbar, double p_guess_target);

/// hbar pi / (2 tr(H rho~)). Throws UnreachableError for zero energy.
double margolus_levitin_time(const HermitianOperator& h, const EmbeddedState& state, double hbar);

/// Every two-state bound that applies to (p0, p1): the equiprobable-only
/// forms are included when |p0 - p1| <= 1e-12.
std::vector<BoundReport> evaluate_two_state_bounds(double p0, double p1, const DensityMatrix& r0,
                                                   const DensityMatrix& r1, const HermitianOperator& h, double t,
                                                   double hbar);

}  // namespace qspeed
