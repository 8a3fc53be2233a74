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

#include "qspeed/states.hpp"

#include <cmath>
#include <sstream>

#include "qspeed/errors.hpp"

namespace qspeed {

namespace {

void check_probability(double p, const char* what) {
  if (!std::isfinite(p) || p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
    std::ostringstream os;
    os << what << ": probability " << p << " outside [0, 1]";
    throw ValidationError(os.str());
  }
}

void check_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace is " << tr << ", expected 1";
    throw ValidationError(os.str());
  }
  const double lo = op_.min_eigenvalue();
  if (lo < -kPsdFloor) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite (min eigenvalue " << lo << ")";
    throw ValidationError(os.str());
  }
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianOperator(m)) {}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > kTraceTolerance) {
    throw ValidationError("pure state vector does not have unit norm");
  }
  return DensityMatrix(ComplexMatrix(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw ValidationError("basis state index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim)));
}

double DensityMatrix::purity() const { return trace_product(matrix(), matrix()); }

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw ValidationError("ensemble must contain at least one state");
  double total = 0.0;
  for (const auto& item : items_) {
    check_probability(item.probability, "ensemble");
    check_same_dim(items_.front().state, item.state, "ensemble");
    total += item.probability;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << total << ", expected 1";
    throw ValidationError(os.str());
  }
}

Ensemble::Ensemble(const std::vector<double>& probabilities, const std::vector<DensityMatrix>& states)
    : Ensemble([&] {
        if (probabilities.size() != states.size()) {
          throw ValidationError("ensemble: probability and state counts differ");
        }
        std::vector<EnsembleItem> items;
        items.reserve(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) items.push_back({probabilities[i], states[i]});
        return items;
      }()) {}

std::vector<double> Ensemble::probabilities() const {
  std::vector<double> out;
  out.reserve(items_.size());
  for (const auto& item : items_) out.push_back(item.probability);
  return out;
}

double trace_distance(const DensityMatrix& r0, const DensityMatrix& r1) {
  check_same_dim(r0, r1, "trace_distance");
  return 0.5 * trace_norm(HermitianOperator(r0.matrix() - r1.matrix()));
}

double delta_asymmetric(double pA, const DensityMatrix& rA, double pB, const DensityMatrix& rB) {
  check_same_dim(rA, rB, "delta_asymmetric");
  if (pA < 0.0 || pB < 0.0) throw ValidationError("delta_asymmetric: negative weight");
  const HermitianOperator diff(pA * rA.matrix() - pB * rB.matrix());
  double total = 0.0;
  for (double l : diff.spectrum().eigenvalues) {
    if (l >= -kZeroEigenvalueCutoff) total += l;
  }
  return std::max(total, 0.0);
}

double helstrom_guess(double p0, const DensityMatrix& r0, double p1, const DensityMatrix& r1) {
  check_probability(p0, "helstrom_guess");
  check_probability(p1, "helstrom_guess");
  if (std::abs(p0 + p1 - 1.0) > kProbabilityTolerance) {
    throw ValidationError("helstrom_guess: p0 + p1 must equal 1");
  }
  return p0 + delta_asymmetric(p1, r1, p0, r0);
}

Index x_max_index(const Ensemble& e) {
  Index best = 0;
  for (Index x = 1; x < e.size(); ++x) {
    if (e.probability(x) > e.probability(best)) best = x;
  }
  return best;
}

ComplexMatrix ancilla_projector(Index encoding_dim, Index ancilla_dim, Index k) {
  ComplexMatrix p = ComplexMatrix::Zero(encoding_dim * ancilla_dim, encoding_dim * ancilla_dim);
  for (Index i = 0; i < encoding_dim; ++i) p(i * ancilla_dim + k, i * ancilla_dim + k) = 1.0;
  return p;
}

EmbeddedState embed_with_ancilla(const DensityMatrix& r, Index ancilla_dim, Index ancilla_index) {
  if (ancilla_dim < 1 || ancilla_index < 0 || ancilla_index >= ancilla_dim) {
    std::ostringstream os;
    os << "ancilla index " << ancilla_index << " out of range for ancilla dimension " << ancilla_dim;
    throw ValidationError(os.str());
  }
  ComplexMatrix marker = ComplexMatrix::Zero(ancilla_dim, ancilla_dim);
  marker(ancilla_index, ancilla_index) = 1.0;
  return {DensityMatrix(kron(r.matrix(), marker)), r.dim(), ancilla_dim, ancilla_index};
}

double min_entropy(double p_guess) {
  if (!(p_guess > 0.0)) throw ValidationError("min_entropy: guessing probability must be positive");
  if (p_guess > 1.0 + kProbabilityTolerance) throw ValidationError("min_entropy: guessing probability exceeds 1");
  return std::max(0.0, -std::log2(p_guess));
}

ComplexMatrix partial_trace_ancilla(const ComplexMatrix& joint, Index encoding_dim, Index ancilla_dim) {
  if (joint.rows() != encoding_dim * ancilla_dim || joint.cols() != joint.rows()) {
    throw ValidationError("partial_trace_ancilla: joint dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(encoding_dim, encoding_dim);
  for (Index i = 0; i < encoding_dim; ++i)
    for (Index j = 0; j < encoding_dim; ++j)
      for (Index a = 0; a < ancilla_dim; ++a) out(i, j) += joint(i * ancilla_dim + a, j * ancilla_dim + a);
  return out;
}

ComplexMatrix partial_trace_encoding(const ComplexMatrix& joint, Index encoding_dim, Index ancilla_dim) {
  if (joint.rows() != encoding_dim * ancilla_dim || joint.cols() != joint.rows()) {
    throw ValidationError("partial_trace_encoding: joint dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ancilla_dim, ancilla_dim);
  for (Index a = 0; a < ancilla_dim; ++a)
    for (Index b = 0; b < ancilla_dim; ++b)
      for (Index i = 0; i < encoding_dim; ++i) out(a, b) += joint(i * ancilla_dim + a, i * ancilla_dim + b);
  return out;
}

}  // namespace qspeed
