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

// Dense Hermitian linear algebra: eigendecomposition, exponentials of
// Hermitian generators, positive/negative splits and trace norms.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <span>

namespace qspeed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTolerance = 1e-10;
/// Eigenvalues with magnitude below this are treated as zero and assigned to
/// the positive part of a split.
inline constexpr double kZeroEigenvalueCutoff = 1e-12;

struct Spectrum {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // column j belongs to eigenvalues[j]
};

namespace detail {
struct SpectrumCache;
}

/// Immutable Hermitian matrix. The input is checked against
/// kHermiticityTolerance and then stored as its exact Hermitian part.
/// The spectrum is computed at most once and shared between copies, so an
/// operator can be read from many threads.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);
  HermitianOperator(const ComplexMatrix& m, Spectrum spectrum);

  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim);
  static HermitianOperator diagonal(std::span<const double> values);
  /// V diag(values) V^dagger with V unitary.
  static HermitianOperator from_spectrum(const RealVector& values, const ComplexMatrix& vectors);

  const ComplexMatrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  const Spectrum& spectrum() const;

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  double trace() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator operator*(double s) const;

 private:
  ComplexMatrix matrix_;
  std::shared_ptr<detail::SpectrumCache> cache_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

struct PositiveNegativeSplit {
  HermitianOperator plus;   // A+ (PSD)
  HermitianOperator minus;  // A- = A+ - A (PSD)
};

/// Largest |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);
double max_abs_entry(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

Spectrum eig_hermitian(const HermitianOperator& m);

/// exp(i s H), computed from the eigendecomposition of H.
ComplexMatrix expm_antihermitian(const HermitianOperator& h, double s);

/// sum_j f(lambda_j) |u_j><u_j|.
ComplexMatrix spectral_function(const HermitianOperator& h, const std::function<double(double)>& f);

PositiveNegativeSplit positive_negative_split(const HermitianOperator& a);

/// Projector onto the eigenvectors with lambda >= -kZeroEigenvalueCutoff.
HermitianOperator positive_projector(const HermitianOperator& a);

/// |A| = A+ + A-.
HermitianOperator absolute_value(const HermitianOperator& a);

double trace_norm(const HermitianOperator& a);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const HermitianOperator& a, double tol);

/// Re tr(A B); exact for Hermitian pairs.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& u);

/// Spectral norm, max_j |lambda_j|. Equals the top eigenvalue for PSD input.
double operator_norm(const HermitianOperator& h);

}  // namespace qspeed
