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

#include "qspeed/attainment.hpp"

#include <cmath>
#include <numbers>

#include "qspeed/bounds.hpp"
#include "qspeed/errors.hpp"

namespace qspeed {

namespace {

void require_energy(double e_max, const char* what) {
  if (!std::isfinite(e_max) || e_max <= 0.0) throw ValidationError(std::string(what) + ": e_max must be positive");
}

}  // namespace

AttainingConstruction build_attaining(const DensityMatrix& r0, const DensityMatrix& r1, double e_max) {
  require_energy(e_max, "build_attaining");
  if (r0.dim() != r1.dim()) throw ValidationError("build_attaining: state dimension mismatch");
  const Index d = r0.dim();
  const HermitianOperator a(ComplexMatrix(r1.matrix() - r0.matrix()));
  HermitianOperator pi_plus = positive_projector(a);
  HermitianOperator pi_minus(ComplexMatrix(ComplexMatrix::Identity(d, d) - pi_plus.matrix()));

  ComplexMatrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  const ComplexMatrix h_hat = kron(pi_minus.matrix(), ComplexMatrix::Identity(2, 2)) + kron(pi_plus.matrix(), flip);
  const ComplexMatrix h = 0.5 * e_max * (h_hat + ComplexMatrix::Identity(2 * d, 2 * d));
  const bool degenerate = a.spectrum().eigenvalues.cwiseAbs().maxCoeff() <= kZeroEigenvalueCutoff;
  return {HermitianOperator(h_hat), HermitianOperator(h), e_max, std::move(pi_plus), std::move(pi_minus), degenerate};
}

double attaining_success_closed_form(const DensityMatrix& r0, const DensityMatrix& r1, double e_max, double t,
                                     double hbar) {
  require_energy(e_max, "attaining_success_closed_form");
  if (!(hbar > 0.0)) throw ValidationError("attaining_success_closed_form: hbar must be positive");
  return 0.5 + 0.25 * one_minus_cos(t * e_max / hbar) * trace_distance(r0, r1);
}

double perfect_discrimination_time(double e_max, double hbar) {
  require_energy(e_max, "perfect_discrimination_time");
  if (!(hbar > 0.0)) throw ValidationError("perfect_discrimination_time: hbar must be positive");
  return hbar * std::numbers::pi / e_max;
}

}  // namespace qspeed
