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

#include "qspeed/truncation.hpp"

#include <algorithm>
#include <cmath>

#include "qspeed/errors.hpp"

namespace qspeed {

namespace {

// Slack on the epsilon test so that exact-support inputs pass at epsilon = 0.
constexpr double kDistanceSlack = 1e-12;

double truncation_distance(const ComplexMatrix& projector, const ComplexMatrix& rho) {
  const ComplexMatrix kept = projector * rho * projector;
  return 0.5 * trace_norm(HermitianOperator(ComplexMatrix(rho - kept)));
}

}  // namespace

TruncationResult truncation_projector(const HermitianOperator& h, const std::vector<EmbeddedState>& states,
                                      double epsilon) {
  if (!(epsilon >= 0.0)) throw ValidationError("truncation_projector: epsilon must be nonnegative");
  if (epsilon > 1.0) throw ValidationError("truncation_projector: epsilon must not exceed 1");
  const double tol = 1e-9 * std::max(1.0, std::abs(h.max_eigenvalue()));
  if (h.min_eigenvalue() < -tol) throw ValidationError("truncation_projector: Hamiltonian must be PSD");
  for (const auto& s : states) {
    if (s.state.dim() != h.dim()) throw ValidationError("truncation_projector: state dimension mismatch");
  }

  const Spectrum& sp = h.spectrum();
  const Index n = h.dim();
  ComplexMatrix projector = ComplexMatrix::Zero(n, n);
  std::vector<Index> kept;
  double worst = 0.0;
  // Eigen returns eigenvalues in ascending order, which is the greedy order.
  for (Index k = 0; k < n; ++k) {
    const ComplexVector v = sp.eigenvectors.col(k);
    projector += v * v.adjoint();
    kept.push_back(k);
    worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, truncation_distance(projector, s.state.matrix()));
    if (worst <= epsilon + kDistanceSlack) break;
  }
  HermitianOperator p(ComplexMatrix(0.5 * (projector + projector.adjoint())));
  HermitianOperator truncated(ComplexMatrix(p.matrix() * h.matrix() * p.matrix()));
  return {std::move(p), std::move(truncated), epsilon, std::move(kept), worst};
}

HermitianOperator truncated_hamiltonian(const TruncationResult& tr, const HermitianOperator& h) {
  if (tr.projector.dim() != h.dim()) throw ValidationError("truncated_hamiltonian: dimension mismatch");
  return HermitianOperator(ComplexMatrix(tr.projector.matrix() * h.matrix() * tr.projector.matrix()));
}

double truncation_success_gap(const Protocol& protocol, const TruncationResult& tr) {
  const HermitianOperator truncated = truncated_hamiltonian(tr, protocol.hamiltonian());
  const Protocol cut(protocol.ensemble(), truncated, protocol.time(), protocol.hbar(), protocol.ancilla_index());
  return std::abs(success_probability(protocol) - success_probability(cut));
}

}  // namespace qspeed
