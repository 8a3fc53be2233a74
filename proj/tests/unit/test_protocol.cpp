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

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "qspeed/attainment.hpp"
#include "qspeed/bounds.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"

using namespace qspeed;
using namespace fixtures;

namespace {

// dimension-1 encoding so that H acts on the ancilla alone
Ensemble trivial_pair() {
  const DensityMatrix one(ComplexMatrix::Ones(1, 1));
  return Ensemble({0.5, 0.5}, {one, one});
}

}  // namespace

TEST_CASE("ground shift") {
  CHECK(max_diff(shift_to_zero_ground(diag({3.0, 5.0})).matrix(), diag({0.0, 2.0}).matrix()) < 1e-14);
  const auto already = diag({0.0, 1.0, 4.0});
  CHECK(max_diff(shift_to_zero_ground(already).matrix(), already.matrix()) < 1e-14);
  Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const auto h = random_hermitian(4, rng);
    const auto s = shift_to_zero_ground(h);
    CHECK(std::abs(s.min_eigenvalue()) <= 1e-10);
    CHECK(oracle::eigenvalues(s.matrix()).front() == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("success probability ignores energy offsets") {
  Rng rng(32);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = random_instance(2 + rep % 2, 2 + rep % 3, 1.0, rng);
    const Index n = inst.h.dim();
    const double t = 3.0 * uniform01(rng);
    const double base = success_probability(Protocol(inst.ensemble(), inst.h, t));
    const double c = 10.0 * uniform01(rng) - 5.0;
    const HermitianOperator moved(ComplexMatrix(inst.h.matrix() + c * ComplexMatrix::Identity(n, n)));
    CHECK(std::abs(success_probability(Protocol(inst.ensemble(), moved, t)) - base) <= 1e-9);
    // a raw random Hermitian generator, shifted internally
    const auto raw = random_hermitian(n, rng);
    const double a = success_probability(Protocol(inst.ensemble(), raw, t));
    const double b = success_probability(Protocol(inst.ensemble(), shift_to_zero_ground(raw), t));
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("protocol validation") {
  const Ensemble e({0.5, 0.5}, {ket(2, 0), ket(2, 1)});
  CHECK_THROWS_AS(Protocol(e, HermitianOperator::zero(3), 1.0), ValidationError);
  CHECK_THROWS_AS(Protocol(e, HermitianOperator::zero(4), -1.0), ValidationError);
  CHECK_THROWS_AS(Protocol(e, HermitianOperator::zero(4), 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Protocol(e, HermitianOperator::zero(4), 1.0, 1.0, Index{2}), ValidationError);
  const Protocol p(Ensemble({0.3, 0.7}, {ket(2, 0), ket(2, 1)}), HermitianOperator::zero(4), 1.0);
  CHECK(p.ancilla_index() == 1);
}

TEST_CASE("evolution unitary") {
  Rng rng(33);
  const auto inst = random_instance(2, 2, 1.0, rng);
  const Protocol p0(inst.ensemble(), inst.h, 0.0);
  CHECK(max_diff(evolution_unitary(p0), ComplexMatrix::Identity(4, 4)) < 1e-14);
  const Protocol pz(inst.ensemble(), HermitianOperator::zero(4), 2.0);
  CHECK(max_diff(evolution_unitary(pz), ComplexMatrix::Identity(4, 4)) < 1e-14);
  for (int rep = 0; rep < 20; ++rep) {
    const auto r = random_instance(3, 3, 2.0, rng);
    const Protocol p(r.ensemble(), r.h, 4.0 * uniform01(rng), 0.5 + uniform01(rng));
    const ComplexMatrix u = evolution_unitary(p);
    CHECK(unitarity_defect(u) <= 1e-9);
    const Index n = p.joint_dim();
    const ComplexMatrix shifted = r.h.matrix() - r.h.min_eigenvalue() * ComplexMatrix::Identity(n, n);
    CHECK(max_diff(u, oracle::expm(Complex(0.0, -p.time() / p.hbar()) * shifted)) <= 1e-9);
  }
}

TEST_CASE("residual") {
  Rng rng(34);
  const auto inst = random_instance(2, 2, 1.0, rng);
  CHECK(max_abs_entry(residual(Protocol(inst.ensemble(), inst.h, 0.0))) < 1e-14);

  const double e = 1.7;
  const ComplexMatrix r = residual(Protocol(trivial_pair(), diag({0.0, e}), kPi / e));
  const auto ev = oracle::eigenvalues2(ComplexMatrix(0.5 * (r + r.adjoint())));
  CHECK(ev[0] == doctest::Approx(-2.0));
  CHECK(ev[1] == doctest::Approx(0.0).scale(1.0));
  CHECK(max_abs_entry(r - r.adjoint()) < 1e-12);

  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_instance(2, 3, 1.5, rng);
    const Protocol p(x.ensemble(), x.h, 5.0 * uniform01(rng));
    const ComplexMatrix res = residual(p);
    const auto& sp = p.hamiltonian().spectrum();
    ComplexMatrix expected = ComplexMatrix::Zero(p.joint_dim(), p.joint_dim());
    for (Index n = 0; n < p.joint_dim(); ++n) {
      const ComplexVector v = sp.eigenvectors.col(n);
      expected += 2.0 * (1.0 - std::cos(p.time() * sp.eigenvalues(n) / p.hbar())) * v * v.adjoint();
    }
    CHECK(max_diff(res * res.adjoint(), expected) <= 1e-9);
  }
}

TEST_CASE("measurement operators") {
  Rng rng(35);
  const auto inst = random_instance(2, 3, 1.0, rng);
  const auto m0 = measurement_operators(Protocol(inst.ensemble(), inst.h, 0.0));
  for (Index x = 0; x < 3; ++x) CHECK(max_diff(m0[static_cast<std::size_t>(x)].matrix(), ancilla_projector(2, 3, x)) < 1e-14);

  const auto single = measurement_operators(Protocol(Ensemble({1.0}, {ket(3, 1)}), random_hamiltonian(3, 1.0, rng), 2.0));
  REQUIRE(single.size() == 1);
  CHECK(max_diff(single[0].matrix(), ComplexMatrix::Identity(3, 3)) <= 1e-12);

  for (Index d = 2; d <= 4; ++d)
    for (Index n = 2; n <= 4; ++n)
      for (int rep = 0; rep < 3; ++rep) {
        const auto r = random_instance(d, n, 1.0, rng);
        const Protocol p(r.ensemble(), r.h, 5.0 * uniform01(rng));
        const auto ms = measurement_operators(p);
        ComplexMatrix sum = ComplexMatrix::Zero(p.joint_dim(), p.joint_dim());
        for (const auto& m : ms) {
          sum += m.matrix();
          CHECK(is_psd(m, 1e-9));
        }
        CHECK(max_diff(sum, ComplexMatrix::Identity(p.joint_dim(), p.joint_dim())) <= 1e-9);
      }
}

TEST_CASE("W decomposition") {
  Rng rng(36);
  const auto inst = random_instance(2, 3, 1.0, rng);
  const auto w0 = w_decomposition(Protocol(inst.ensemble(), inst.h, 0.0), 1);
  CHECK(max_abs_entry(w0.w1.matrix()) < 1e-14);
  CHECK(max_abs_entry(w0.w2.matrix()) < 1e-14);
  CHECK_THROWS_AS(w_decomposition(Protocol(inst.ensemble(), inst.h, 1.0), 3), ValidationError);

  for (int rep = 0; rep < 30; ++rep) {
    const Index d = 2 + rep % 3, n = 2 + (rep / 3) % 3;
    const auto r = random_instance(d, n, 1.0, rng);
    const Protocol p(r.ensemble(), r.h, 5.0 * uniform01(rng));
    const auto ms = measurement_operators(p);
    const Index xm = p.ancilla_index();
    const auto rho = embed_with_ancilla(random_density_matrix(d, rng), n, xm).state;
    for (Index x = 0; x < n; ++x) {
      const auto w = w_decomposition(p, x);
      const ComplexMatrix proj = ancilla_projector(d, n, x);
      CHECK(max_diff(w.w1.matrix() + w.w2.matrix(), ms[static_cast<std::size_t>(x)].matrix() - proj) <= 1e-9);
      CHECK(is_psd(w.w2, 1e-10));
      if (x != xm) CHECK(std::abs(trace_product(w.w1.matrix(), rho.matrix())) <= 1e-12);
      const auto& rx = p.embedded(x).state.matrix();
      const double lhs = trace_product(ms[static_cast<std::size_t>(x)].matrix(), rx);
      const double rhs = trace_product(proj, rx) + trace_product(w.w1.matrix() + w.w2.matrix(), rx);
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("basic lemma on W") {
  Rng rng(37);
  for (int rep = 0; rep < 60; ++rep) {
    const Index d = 2 + rep % 3, n = 2 + (rep / 3) % 3;
    const auto r = random_instance(d, n, 1.0 + 2.0 * uniform01(rng), rng);
    const Protocol p(r.ensemble(), r.h, 5.0 * uniform01(rng));
    const Index xm = p.ancilla_index();
    const auto a = random_hermitian(d, rng);
    const ComplexMatrix at = kron(a.matrix(), ket(n, xm).matrix());
    const ComplexMatrix abs_t = kron(absolute_value(a).matrix(), ket(n, xm).matrix());
    const ComplexMatrix plus_t = kron(positive_negative_split(a).plus.matrix(), ket(n, xm).matrix());
    const auto& sp = p.hamiltonian().spectrum();
    for (Index x = 0; x < n; ++x) {
      const auto w = w_decomposition(p, x);
      const ComplexMatrix& ax = x == xm ? abs_t : plus_t;
      double rhs = 0.0;
      for (Index k = 0; k < p.joint_dim(); ++k) {
        const ComplexVector v = sp.eigenvectors.col(k);
        rhs += 2.0 * (1.0 - std::cos(p.time() * sp.eigenvalues(k))) * (v.adjoint() * ax * v)(0, 0).real();
      }
      CHECK(trace_product(w.w1.matrix() + w.w2.matrix(), at) <= rhs + 1e-9);
    }
  }
}

TEST_CASE("success probability") {
  Rng rng(38);
  for (int rep = 0; rep < 10; ++rep) {
    const auto r = random_instance(3, 3, 1.0, rng);
    const double pmax = *std::max_element(r.p.begin(), r.p.end());
    CHECK(success_probability(Protocol(r.ensemble(), r.h, 0.0)) == doctest::Approx(pmax).epsilon(1e-14));
  }

  const auto a = build_attaining(ket(2, 0), ket(2, 1), 1.0);
  const Ensemble orth({0.5, 0.5}, {ket(2, 0), ket(2, 1)});
  CHECK(success_probability(Protocol(orth, a.hamiltonian, kPi)) == doctest::Approx(1.0).epsilon(1e-12));

  for (Index d = 2; d <= 4; ++d)
    for (Index n = 2; n <= 4; ++n)
      for (int rep = 0; rep < 3; ++rep) {
        const auto r = random_instance(d, n, 1.0 + uniform01(rng), rng);
        const double t = 5.0 * uniform01(rng), hbar = 0.5 + uniform01(rng);
        const double ps = success_probability(Protocol(r.ensemble(), r.h, t, hbar));
        CHECK(ps >= -1e-12);
        CHECK(ps <= 1.0 + 1e-12);
        CHECK(std::abs(ps - oracle::direct_success(r.p, r.matrices(), r.h.matrix(), t, hbar)) <= 1e-9);
      }
}

TEST_CASE("Hamiltonian search") {
  const Ensemble orth({0.5, 0.5}, {ket(2, 0), ket(2, 1)});
  const auto zero = optimize_hamiltonian(orth, kPi, 1.0, 1.0, 0, 1);
  CHECK(zero.success_probability == doctest::Approx(0.5));
  CHECK(max_abs_entry(zero.hamiltonian.matrix()) == 0.0);
  CHECK_THROWS_AS(optimize_hamiltonian(orth, kPi, 0.0, 1.0, 10, 1), ValidationError);

  const auto found = optimize_hamiltonian(orth, kPi, 1.0, 1.0, 1500, 7);
  CHECK(found.success_probability >= 0.99);
  CHECK(found.hamiltonian.min_eigenvalue() >= -1e-10);
  CHECK(found.hamiltonian.max_eigenvalue() <= 1.0 + 1e-10);
  const auto again = optimize_hamiltonian(orth, kPi, 1.0, 1.0, 1500, 7);
  CHECK(again.success_probability == found.success_probability);
  CHECK(max_diff(again.hamiltonian.matrix(), found.hamiltonian.matrix()) == 0.0);

  Rng rng(39);
  for (int rep = 0; rep < 5; ++rep) {
    const auto r = random_instance(2, 2, 1.0, rng);
    const double t = 2.0 * uniform01(rng);
    const auto res = optimize_hamiltonian(r.ensemble(), t, 1.0, 1.0, 200, 100 + static_cast<std::uint64_t>(rep));
    CHECK(res.success_probability <= simple_trace_bound(r.p[0], r.p[1], r.states[0], r.states[1], res.hamiltonian, t, 1.0) + 1e-9);
  }
}

TEST_CASE("iterative optimal measurement") {
  Rng rng(40);
  for (int rep = 0; rep < 20; ++rep) {
    const double p0 = uniform01(rng);
    const auto a = random_density_matrix(3, rng), b = random_density_matrix(3, rng);
    const auto res = optimal_measurement_iterate(Ensemble({p0, 1 - p0}, {a, b}), 20000);
    CHECK(std::abs(res.p_guess - helstrom_guess(p0, a, 1 - p0, b)) <= 1e-6);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (const auto& m : res.povm) sum += m.matrix();
    CHECK(max_diff(sum, ComplexMatrix::Identity(3, 3)) <= 1e-8);
  }

  const auto rho = random_density_matrix(2, rng);
  const auto same = optimal_measurement_iterate(Ensemble({0.2, 0.5, 0.3}, {rho, rho, rho}), 1000);
  CHECK(same.p_guess == doctest::Approx(0.5).epsilon(1e-9));

  const auto orth = optimal_measurement_iterate(Ensemble({0.2, 0.5, 0.3}, {ket(3, 0), ket(3, 1), ket(3, 2)}), 1000);
  CHECK(std::abs(orth.p_guess - 1.0) <= 1e-6);

  // more iterations never hurt
  const Ensemble e({0.3, 0.3, 0.4}, {random_density_matrix(2, rng), random_density_matrix(2, rng), random_pure_state(2, rng)});
  double prev = 0.0;
  for (std::size_t it : {1u, 5u, 20u, 100u, 1000u}) {
    const double v = optimal_measurement_iterate(e, it).p_guess;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}
