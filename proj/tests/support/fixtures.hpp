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

// Small helpers shared by the test executables.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qspeed/random.hpp"
#include "qspeed/states.hpp"

namespace fixtures {

using namespace qspeed;

inline constexpr double kPi = std::numbers::pi;

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline DensityMatrix ket(Index dim, Index k) { return DensityMatrix::basis(dim, k); }

inline HermitianOperator diag(std::initializer_list<double> v) {
  const std::vector<double> values(v);
  return HermitianOperator::diagonal(values);
}

/// Pauli X on the ancilla, with the encoding register first.
inline ComplexMatrix pauli_x() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

struct RandomInstance {
  std::vector<double> p;
  std::vector<DensityMatrix> states;
  HermitianOperator h;
  Ensemble ensemble() const { return Ensemble(p, states); }
  std::vector<ComplexMatrix> matrices() const {
    std::vector<ComplexMatrix> out;
    for (const auto& s : states) out.push_back(s.matrix());
    return out;
  }
};

/// Random ensemble with dimension d, n symbols and a PSD Hamiltonian whose
/// norm is e_max. Every third instance uses pure states.
inline RandomInstance random_instance(Index d, Index n, double e_max, Rng& rng, bool equiprobable = false) {
  RandomInstance r{equiprobable ? std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n))
                                : random_distribution(n, rng),
                   {},
                   HermitianOperator::zero(1)};
  const bool pure = uniform01(rng) < 1.0 / 3.0;
  for (Index x = 0; x < n; ++x) r.states.push_back(pure ? random_pure_state(d, rng) : random_density_matrix(d, rng));
  r.h = random_hamiltonian(d * n, e_max, rng);
  return r;
}

}  // namespace fixtures
