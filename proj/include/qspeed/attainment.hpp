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

// Explicit two-state Hamiltonian that reaches one quarter of the spectrum
// bound and discriminates orthogonal states perfectly at t = hbar pi / E_max.

#pragma once

#include "qspeed/states.hpp"

namespace qspeed {

struct AttainingConstruction {
  HermitianOperator h_hat;        // Pi- (x) I + Pi+ (x) X, unitary
  HermitianOperator hamiltonian;  // e_max (h_hat + I) / 2
  double e_max;
  HermitianOperator pi_plus;   // rho1 - rho0 >= 0, kernel included
  HermitianOperator pi_minus;  // I - pi_plus
  bool degenerate_difference;  // rho0 == rho1, no transfer happens
};

/// Ancilla dimension 2, ordering encoding (x) ancilla, ancilla starts at |0>.
AttainingConstruction build_attaining(const DensityMatrix& r0, const DensityMatrix& r1, double e_max);

/// 1/2 + (1 - cos(t e_max / hbar)) D(rho0, rho1) / 4.
double attaining_success_closed_form(const DensityMatrix& r0, const DensityMatrix& r1, double e_max, double t,
                                     double hbar);

/// hbar pi / e_max.
double perfect_discrimination_time(double e_max, double hbar);

}  // namespace qspeed
