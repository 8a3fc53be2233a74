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

#include "qspeed/random.hpp"

#include <algorithm>
#include <cmath>

#include "qspeed/errors.hpp"

namespace qspeed {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix haar_unitary(Index dim, Rng& rng) {
  const ComplexMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is exactly Haar.
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(Index dim, Rng& rng, Index rank) {
  if (dim < 1) throw ValidationError("random_density_matrix: dimension must be positive");
  if (rank <= 0 || rank > dim) rank = dim;
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(ComplexMatrix(0.5 * (rho + rho.adjoint())));
}

DensityMatrix random_pure_state(Index dim, Rng& rng) {
  ComplexVector psi = ginibre(dim, 1, rng).col(0);
  psi.normalize();
  return DensityMatrix::pure(psi);
}

HermitianOperator random_hermitian(Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return HermitianOperator(ComplexMatrix(0.5 * (g + g.adjoint())));
}

HermitianOperator random_hamiltonian(Index dim, double e_max, Rng& rng) {
  if (!(e_max >= 0.0)) throw ValidationError("random_hamiltonian: e_max must be nonnegative");
  RealVector levels(dim);
  for (Index i = 0; i < dim; ++i) levels(i) = e_max * uniform01(rng);
  std::sort(levels.data(), levels.data() + dim);
  levels(0) = 0.0;
  if (dim > 1) levels(dim - 1) = e_max;
  return HermitianOperator::from_spectrum(levels, haar_unitary(dim, rng));
}

std::vector<double> random_distribution(Index n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& v : p) {
    v = expo(rng);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace qspeed
