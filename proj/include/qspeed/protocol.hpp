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

// Time-limited discrimination with a classical ancilla readout.
//
// The encoding register holds rho_x, the N-level ancilla starts in |k>
// (k = x_max by default), both evolve under U = exp(-iHt/hbar) and the
// ancilla is then read in the computational basis. The guess is correct when
// the readout equals x.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qspeed/states.hpp"

namespace qspeed {

class Protocol {
 public:
  /// The Hamiltonian acts on encoding (x) ancilla with ancilla dimension
  /// N = ensemble size. It is shifted so that its ground energy is 0; the
  /// input is kept for reporting.
  Protocol(Ensemble ensemble, const HermitianOperator& hamiltonian, double time, double hbar = 1.0,
           std::optional<Index> ancilla_index = std::nullopt);

  const Ensemble& ensemble() const { return ensemble_; }
  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const HermitianOperator& input_hamiltonian() const { return input_hamiltonian_; }
  /// Ground energy removed from the input Hamiltonian.
  double energy_offset() const { return energy_offset_; }
  double time() const { return time_; }
  double hbar() const { return hbar_; }
  Index ancilla_index() const { return ancilla_index_; }
  Index symbols() const { return ensemble_.size(); }
  Index encoding_dim() const { return ensemble_.encoding_dim(); }
  Index joint_dim() const { return encoding_dim() * symbols(); }

  /// rho_x (x) |ancilla_index><ancilla_index|.
  const EmbeddedState& embedded(Index x) const { return embedded_.at(static_cast<std::size_t>(x)); }

  Protocol with_time(double time) const;

 private:
  Ensemble ensemble_;
  HermitianOperator input_hamiltonian_;
  HermitianOperator hamiltonian_;
  double energy_offset_;
  double time_;
  double hbar_;
  Index ancilla_index_;
  std::vector<EmbeddedState> embedded_;
};

/// W_x = W_x^1 + W_x^2 with M_x = I (x) P_x + W_x.
struct WDecomposition {
  HermitianOperator w1;  // (I (x) P_x) R + R^dagger (I (x) P_x)
  HermitianOperator w2;  // R^dagger (I (x) P_x) R
  Index symbol;
};

HermitianOperator shift_to_zero_ground(const HermitianOperator& h);

/// exp(-i H t / hbar).
ComplexMatrix evolution_unitary(const Protocol& p);

/// R = U - I.
ComplexMatrix residual(const Protocol& p);

/// M_x = U^dagger (I (x) P_x) U for every symbol x.
std::vector<HermitianOperator> measurement_operators(const Protocol& p);

WDecomposition w_decomposition(const Protocol& p, Index x);

/// sum_x p_x tr(M_x rho~_x).
double success_probability(const Protocol& p);

struct HamiltonianSearchResult {
  HermitianOperator hamiltonian;
  double success_probability;
  std::size_t evaluations;
};

/// Randomized search over 0 <= H, ||H|| <= e_max for the best success
/// probability at time t. A lower-bound witness only; no optimality claim.
/// budget counts objective evaluations; budget 0 returns H = 0.
HamiltonianSearchResult optimize_hamiltonian(const Ensemble& e, double t, double e_max, double hbar,
                                             std::size_t budget, std::uint64_t seed);

struct MeasurementSearchResult {
  std::vector<HermitianOperator> povm;
  double p_guess;
  std::size_t iterations;
  bool converged;
};

/// Fixed-point iteration for the time-unlimited minimum-error measurement.
/// Stops when the relative change of P_guess drops below 1e-10 or after
/// max_iterations. Returns the best iterate seen, so p_guess never decreases
/// as max_iterations grows.
MeasurementSearchResult optimal_measurement_iterate(const Ensemble& e, std::size_t max_iterations);

/// sum_x p_x tr(E_x rho_x) for a POVM on the encoding space.
double guessing_probability(const Ensemble& e, const std::vector<HermitianOperator>& povm);

}  // namespace qspeed
