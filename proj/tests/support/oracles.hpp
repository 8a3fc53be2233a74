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

// Reference computations for the test suite. Nothing here calls the library
// numerics: eigenvalues come from a Jacobi sweep on the real embedding,
// exponentials from a Taylor series, partial traces from explicit loops.

#pragma once

#include <array>
#include <vector>

#include "qspeed/hermitian.hpp"

namespace oracle {

using qspeed::ComplexMatrix;

/// Ascending eigenvalues of a Hermitian matrix. Uses cyclic Jacobi on the
/// real symmetric matrix [[Re, -Im], [Im, Re]], which repeats each eigenvalue.
std::vector<double> eigenvalues(const ComplexMatrix& h);

/// Closed form for 2x2 Hermitian matrices.
std::array<double, 2> eigenvalues2(const ComplexMatrix& h);

double trace_norm(const ComplexMatrix& a);
double positive_trace(const ComplexMatrix& a);

/// exp(a) by scaling and squaring with a truncated Taylor series.
ComplexMatrix expm(const ComplexMatrix& a);

/// Traces out the second factor of a (first (x) second) joint matrix.
ComplexMatrix trace_out_second(const ComplexMatrix& joint, int d1, int d2);
/// Traces out the first factor.
ComplexMatrix trace_out_first(const ComplexMatrix& joint, int d1, int d2);

/// rho (x) |k><k| built entry by entry.
ComplexMatrix embed(const ComplexMatrix& rho, int n, int k);

/// Success probability through explicit state evolution,
/// sum_x p_x tr((I (x) P_x) U rho~_x U^dagger) with the ground energy removed.
double direct_success(const std::vector<double>& p, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h,
                      double t, double hbar);

/// Best binary projective measurement on a qubit found by a Bloch-sphere grid
/// with one refinement pass. Accurate to about 1e-5.
double helstrom_grid(double p0, const ComplexMatrix& r0, double p1, const ComplexMatrix& r1);

/// CHSH winning probability of deterministic answers a = f[y], b = g[z].
double chsh_classical(std::array<int, 2> f, std::array<int, 2> g);

}  // namespace oracle
