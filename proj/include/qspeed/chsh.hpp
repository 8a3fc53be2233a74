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

// The CHSH game seen from Bob's side as a two-state discrimination problem.
//
// Alice answers a on question y, Bob answers b on question z, questions are
// uniform and the pair wins when a xor b = y z. Once Alice has measured, Bob
// must guess x = a xor y z from his half of the shared state. Given z this is
// the ensemble {p_x^z, sigma_x^z}.

#pragma once

#include <array>
#include <optional>

#include "qspeed/bounds.hpp"
#include "qspeed/states.hpp"

namespace qspeed {

using AlicePovms = std::array<std::array<HermitianOperator, 2>, 2>;  // [y][a]
using BobPovms = std::array<std::array<HermitianOperator, 2>, 2>;    // [z][b]

class ChshStrategy {
 public:
  /// shared_state lives on A (x) B with index i_A * dim_b + i_B. Each Bob
  /// Hamiltonian acts on B (x) ancilla(2) and must be PSD.
  ChshStrategy(DensityMatrix shared_state, Index dim_a, Index dim_b, AlicePovms alice_povms,
               std::array<HermitianOperator, 2> bob_hamiltonians, double time, double hbar = 1.0);

  /// Same Hamiltonian for both of Bob's questions.
  ChshStrategy(DensityMatrix shared_state, Index dim_a, Index dim_b, AlicePovms alice_povms,
               const HermitianOperator& bob_hamiltonian, double time, double hbar = 1.0);

  const DensityMatrix& shared_state() const { return shared_state_; }
  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  const AlicePovms& alice_povms() const { return alice_povms_; }
  const HermitianOperator& bob_hamiltonian(int z) const { return bob_hamiltonians_.at(static_cast<std::size_t>(z)); }
  double time() const { return time_; }
  double hbar() const { return hbar_; }

  ChshStrategy with_time(double time) const;
  ChshStrategy with_clock(double time, double hbar) const;
  ChshStrategy with_bob_hamiltonians(std::array<HermitianOperator, 2> h) const;

 private:
  DensityMatrix shared_state_;
  Index dim_a_;
  Index dim_b_;
  AlicePovms alice_povms_;
  std::array<HermitianOperator, 2> bob_hamiltonians_;
  double time_;
  double hbar_;
};

struct ConditionalState {
  double probability;                  // p(a|y)
  std::optional<DensityMatrix> state;  // empty when p(a|y) is 0
};

using ConditionalStates = std::array<std::array<ConditionalState, 2>, 2>;  // [y][a]

struct ConditionalEnsembles {
  std::array<std::array<double, 2>, 2> probabilities;                 // p_x^z, [z][x]
  std::array<std::array<std::optional<DensityMatrix>, 2>, 2> states;  // sigma_x^z
  std::array<std::array<std::array<double, 2>, 2>, 2> weights;        // q^{z,x}_y, [z][x][y]

  /// Ensemble for question z. A slot with p_x^z = 0 is filled with the other
  /// state so that the ensemble stays well formed.
  Ensemble ensemble(int z) const;
};

/// Threshold below which an outcome probability counts as zero.
inline constexpr double kOutcomeCutoff = 1e-12;

/// p(a|y) and rho_{y,a} = tr_A[(A_{a|y} (x) I) rho] / p(a|y).
ConditionalStates conditional_states(const ChshStrategy& s);

ConditionalEnsembles discrimination_ensembles(const ConditionalStates& conds);

/// 1/2 sum_z P_guess(X^z | B), each term by the Helstrom formula.
double p_win_unlimited(const ChshStrategy& s);

/// Bob's Helstrom measurement for each z; outcome b is his guess of x.
BobPovms helstrom_bob_povms(const ConditionalEnsembles& ens);

/// 1/4 sum_{y,z} sum_{a xor b = y z} tr[(A_{a|y} (x) B_{b|z}) rho].
double p_win_direct(const DensityMatrix& shared_state, Index dim_a, Index dim_b, const AlicePovms& alice,
                    const BobPovms& bob);

/// Deterministic classical strategy a = f[y], b = g[z].
double deterministic_classical_p_win(std::array<int, 2> f, std::array<int, 2> g);

/// Bob runs the ancilla protocol for each z with his ancilla at x_max^z.
double p_win_time_limited(const ChshStrategy& s);

/// 1/2 (p_xmax^0 + p_xmax^1) + gamma t ||H|| / (sqrt 2 hbar), gamma by the max rule.
double tsirelson_time_bound_general(std::array<double, 2> p_xmax_by_z, const HermitianOperator& h, double t,
                                    double hbar);

/// 3/4 + gamma t ||H|| / (sqrt 2 hbar).
double tsirelson_time_bound(const HermitianOperator& h, double t, double hbar);

/// 1/2 + gamma t ||H|| / (2 sqrt 2 hbar), for uniform Alice marginals.
double tsirelson_time_bound_uniform(const HermitianOperator& h, double t, double hbar);

/// The general bound for a concrete strategy. With two Bob Hamiltonians the
/// larger gamma ||H_z|| is used.
double tsirelson_time_bound_for(const ChshStrategy& s);

/// hbar / (gamma e_max).
double min_time_for_tsirelson(double e_max, double hbar, double gamma);

/// Smallest ||H|| compatible with winning probability q at time t:
/// max(0, sqrt 2 hbar (q - 3/4) / (gamma t)).
double energy_witness(double q_observed, double t, double hbar, double gamma = kGammaLarge);

/// Maximally entangled qubit pair, Alice measures Z for y = 0 and X for
/// y = 1. Bob gets H = 0 at t = 0.
ChshStrategy canonical_optimal_strategy();

/// Product strategy on trivial registers realising a = f[y].
ChshStrategy deterministic_alice_strategy(std::array<int, 2> f, const HermitianOperator& bob_hamiltonian, double time,
                                          double hbar = 1.0);

}  // namespace qspeed
