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

// Density matrices, ensembles {p_x, rho_x}, distinguishability measures and
// the encoding (x) ancilla embedding.
//
// Joint operators on encoding (x) ancilla use row-major index mapping
// i_enc * ancilla_dim + i_anc throughout the library.

#pragma once

#include <vector>

#include "qspeed/hermitian.hpp"

namespace qspeed {

inline constexpr double kPsdFloor = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-10;

class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  explicit DensityMatrix(const ComplexMatrix& m);

  /// |psi><psi|; psi must have unit norm to within kTraceTolerance.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis(Index dim, Index k);
  static DensityMatrix maximally_mixed(Index dim);

  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  Index dim() const { return op_.dim(); }
  double purity() const;

 private:
  HermitianOperator op_;
};

struct EnsembleItem {
  double probability;
  DensityMatrix state;
};

/// Ordered list of (p_x, rho_x). Probabilities are validated, never
/// renormalized.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleItem> items);
  Ensemble(const std::vector<double>& probabilities, const std::vector<DensityMatrix>& states);

  Index size() const { return static_cast<Index>(items_.size()); }
  Index encoding_dim() const { return items_.front().state.dim(); }
  double probability(Index x) const { return items_.at(static_cast<std::size_t>(x)).probability; }
  const DensityMatrix& state(Index x) const { return items_.at(static_cast<std::size_t>(x)).state; }
  const std::vector<EnsembleItem>& items() const { return items_; }
  std::vector<double> probabilities() const;

 private:
  std::vector<EnsembleItem> items_;
};

/// rho (x) |k><k| on encoding (x) ancilla.
struct EmbeddedState {
  DensityMatrix state;
  Index encoding_dim;
  Index ancilla_dim;
  Index ancilla_index;
};

double trace_distance(const DensityMatrix& r0, const DensityMatrix& r1);

/// tr((pA rA - pB rB)+), i.e. Delta(pA rA, pB rB). Not symmetric.
double delta_asymmetric(double pA, const DensityMatrix& rA, double pB, const DensityMatrix& rB);

/// Optimal time-unlimited guessing probability for two states,
/// p0 + Delta(p1 rho1, p0 rho0).
double helstrom_guess(double p0, const DensityMatrix& r0, double p1, const DensityMatrix& r1);

/// argmax_x p_x, smallest index on ties.
Index x_max_index(const Ensemble& e);

EmbeddedState embed_with_ancilla(const DensityMatrix& r, Index ancilla_dim, Index ancilla_index);

/// -log2(p_guess), in bits.
double min_entropy(double p_guess);

ComplexMatrix partial_trace_ancilla(const ComplexMatrix& joint, Index encoding_dim, Index ancilla_dim);
ComplexMatrix partial_trace_encoding(const ComplexMatrix& joint, Index encoding_dim, Index ancilla_dim);

/// I_enc (x) |k><k|.
ComplexMatrix ancilla_projector(Index encoding_dim, Index ancilla_dim, Index k);

}  // namespace qspeed
