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

#include "qspeed/protocol.hpp"

#include <cmath>
#include <sstream>

#include "qspeed/errors.hpp"

namespace qspeed {

HermitianOperator shift_to_zero_ground(const HermitianOperator& h) {
  const double e0 = h.min_eigenvalue();
  const Spectrum& sp = h.spectrum();
  RealVector shifted = sp.eigenvalues.array() - e0;
  shifted(0) = 0.0;
  return HermitianOperator(ComplexMatrix(h.matrix() - e0 * ComplexMatrix::Identity(h.dim(), h.dim())),
                           Spectrum{shifted, sp.eigenvectors});
}

Protocol::Protocol(Ensemble ensemble, const HermitianOperator& hamiltonian, double time, double hbar,
                   std::optional<Index> ancilla_index)
    : ensemble_(std::move(ensemble)),
      input_hamiltonian_(hamiltonian),
      hamiltonian_(shift_to_zero_ground(hamiltonian)),
      energy_offset_(hamiltonian.min_eigenvalue()),
      time_(time),
      hbar_(hbar),
      ancilla_index_(ancilla_index.value_or(x_max_index(ensemble_))) {
  if (hamiltonian.dim() != joint_dim()) {
    std::ostringstream os;
    os << "protocol: Hamiltonian dimension " << hamiltonian.dim() << " does not match encoding dimension "
       << encoding_dim() << " x " << symbols() << " symbols";
    throw ValidationError(os.str());
  }
  if (!std::isfinite(time) || time < 0.0) throw ValidationError("protocol: time must be finite and nonnegative");
  if (!std::isfinite(hbar) || hbar <= 0.0) throw ValidationError("protocol: hbar must be positive");
  if (ancilla_index_ < 0 || ancilla_index_ >= symbols()) throw ValidationError("protocol: ancilla index out of range");
  embedded_.reserve(static_cast<std::size_t>(symbols()));
  for (Index x = 0; x < symbols(); ++x) {
    embedded_.push_back(embed_with_ancilla(ensemble_.state(x), symbols(), ancilla_index_));
  }
}

Protocol Protocol::with_time(double time) const {
  return Protocol(ensemble_, hamiltonian_, time, hbar_, ancilla_index_);
}

ComplexMatrix evolution_unitary(const Protocol& p) {
  return expm_antihermitian(p.hamiltonian(), -p.time() / p.hbar());
}

ComplexMatrix residual(const Protocol& p) {
  return evolution_unitary(p) - ComplexMatrix::Identity(p.joint_dim(), p.joint_dim());
}

std::vector<HermitianOperator> measurement_operators(const Protocol& p) {
  const ComplexMatrix u = evolution_unitary(p);
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(p.symbols()));
  for (Index x = 0; x < p.symbols(); ++x) {
    const ComplexMatrix proj = ancilla_projector(p.encoding_dim(), p.symbols(), x);
    out.emplace_back(ComplexMatrix(u.adjoint() * proj * u));
  }
  return out;
}

WDecomposition w_decomposition(const Protocol& p, Index x) {
  if (x < 0 || x >= p.symbols()) throw ValidationError("w_decomposition: symbol index out of range");
  const ComplexMatrix r = residual(p);
  const ComplexMatrix proj = ancilla_projector(p.encoding_dim(), p.symbols(), x);
  HermitianOperator w1(ComplexMatrix(proj * r + r.adjoint() * proj));
  HermitianOperator w2(ComplexMatrix(r.adjoint() * proj * r));
  return {std::move(w1), std::move(w2), x};
}

double success_probability(const Protocol& p) {
  const auto ms = measurement_operators(p);
  double total = 0.0;
  for (Index x = 0; x < p.symbols(); ++x) {
    total += p.ensemble().probability(x) *
             trace_product(ms[static_cast<std::size_t>(x)].matrix(), p.embedded(x).state.matrix());
  }
  return total;
}

}  // namespace qspeed
