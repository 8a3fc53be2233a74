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

// Seeded random instances: Haar unitaries, Hilbert-Schmidt density
// matrices, Hamiltonians with a prescribed energy range.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qspeed/states.hpp"

namespace qspeed {

using Rng = std::mt19937_64;

/// Matrix of i.i.d. standard complex Gaussians.
ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);

ComplexMatrix haar_unitary(Index dim, Rng& rng);

/// Hilbert-Schmidt measure for rank == dim; rank < dim gives the induced
/// measure restricted to that rank.
DensityMatrix random_density_matrix(Index dim, Rng& rng, Index rank = 0);

DensityMatrix random_pure_state(Index dim, Rng& rng);

/// GUE-like Hermitian matrix.
HermitianOperator random_hermitian(Index dim, Rng& rng);

/// PSD with lowest eigenvalue 0 and largest eigenvalue e_max; interior
/// levels uniform in [0, e_max], Haar eigenbasis.
HermitianOperator random_hamiltonian(Index dim, double e_max, Rng& rng);

/// Uniform on the probability simplex.
std::vector<double> random_distribution(Index n, Rng& rng);

double uniform01(Rng& rng);

}  // namespace qspeed
