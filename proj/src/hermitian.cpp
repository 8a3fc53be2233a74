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

#include "qspeed/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "qspeed/errors.hpp"

namespace qspeed {

namespace detail {
struct SpectrumCache {
  std::once_flag once;
  Spectrum spectrum;
};
}  // namespace detail

namespace {

Spectrum compute_spectrum(const ComplexMatrix& m) {
  if (m.rows() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_entry(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool all_finite(const ComplexMatrix& m) {
  for (Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) : cache_(std::make_shared<detail::SpectrumCache>()) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "operator is not square (" << m.rows() << "x" << m.cols() << ")";
    throw ValidationError(os.str());
  }
  if (m.rows() == 0) throw ValidationError("operator has dimension 0");
  if (!all_finite(m)) throw ValidationError("operator has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > kHermiticityTolerance) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw ValidationError(os.str());
  }
  matrix_ = 0.5 * (m + m.adjoint());
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m, Spectrum spectrum) : HermitianOperator(m) {
  std::call_once(cache_->once, [&] { cache_->spectrum = std::move(spectrum); });
}

HermitianOperator HermitianOperator::zero(Index dim) { return HermitianOperator(ComplexMatrix::Zero(dim, dim)); }

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::from_spectrum(const RealVector& values, const ComplexMatrix& vectors) {
  if (vectors.rows() != vectors.cols() || vectors.cols() != values.size()) {
    throw ValidationError("from_spectrum: eigenvector matrix does not match eigenvalue count");
  }
  return HermitianOperator(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
}

const Spectrum& HermitianOperator::spectrum() const {
  std::call_once(cache_->once, [&] { cache_->spectrum = compute_spectrum(matrix_); });
  return cache_->spectrum;
}

double HermitianOperator::min_eigenvalue() const { return spectrum().eigenvalues(0); }

double HermitianOperator::max_eigenvalue() const { return spectrum().eigenvalues(dim() - 1); }

double HermitianOperator::trace() const { return matrix_.trace().real(); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw ValidationError("operator sum: dimension mismatch");
  return HermitianOperator(matrix_ + other.matrix_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw ValidationError("operator difference: dimension mismatch");
  return HermitianOperator(matrix_ - other.matrix_);
}

HermitianOperator HermitianOperator::operator-() const { return HermitianOperator(-matrix_); }

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(s * matrix_); }

Spectrum eig_hermitian(const HermitianOperator& m) { return m.spectrum(); }

ComplexMatrix spectral_function(const HermitianOperator& h, const std::function<double(double)>& f) {
  const Spectrum& sp = h.spectrum();
  RealVector fv(sp.eigenvalues.size());
  for (Index j = 0; j < fv.size(); ++j) fv(j) = f(sp.eigenvalues(j));
  return sp.eigenvectors * fv.cast<Complex>().asDiagonal() * sp.eigenvectors.adjoint();
}

ComplexMatrix expm_antihermitian(const HermitianOperator& h, double s) {
  const Spectrum& sp = h.spectrum();
  ComplexVector phases(sp.eigenvalues.size());
  for (Index j = 0; j < phases.size(); ++j) phases(j) = std::polar(1.0, s * sp.eigenvalues(j));
  return sp.eigenvectors * phases.asDiagonal() * sp.eigenvectors.adjoint();
}

PositiveNegativeSplit positive_negative_split(const HermitianOperator& a) {
  HermitianOperator plus(spectral_function(a, [](double l) { return l >= -kZeroEigenvalueCutoff ? l : 0.0; }));
  HermitianOperator minus(plus.matrix() - a.matrix());
  return {std::move(plus), std::move(minus)};
}

HermitianOperator positive_projector(const HermitianOperator& a) {
  return HermitianOperator(spectral_function(a, [](double l) { return l >= -kZeroEigenvalueCutoff ? 1.0 : 0.0; }));
}

HermitianOperator absolute_value(const HermitianOperator& a) {
  return HermitianOperator(spectral_function(a, [](double l) { return std::abs(l); }));
}

double trace_norm(const HermitianOperator& a) { return a.spectrum().eigenvalues.cwiseAbs().sum(); }

bool is_psd(const HermitianOperator& a, double tol) { return a.min_eigenvalue() >= -tol; }

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw ValidationError("trace_product: shape mismatch");
  // tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs_entry(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

double operator_norm(const HermitianOperator& h) {
  return std::max(std::abs(h.min_eigenvalue()), std::abs(h.max_eigenvalue()));
}

}  // namespace qspeed
