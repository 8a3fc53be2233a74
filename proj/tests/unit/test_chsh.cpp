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
#include "qspeed/chsh.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"

using namespace qspeed;
using namespace fixtures;

namespace {

constexpr double kQuantumValue = 0.8535533905932737;

std::array<HermitianOperator, 2> random_two_outcome(Index d, Rng& rng) {
  RealVector w(d);
  for (Index i = 0; i < d; ++i) w(i) = uniform01(rng);
  const ComplexMatrix v = haar_unitary(d, rng);
  const auto a0 = HermitianOperator::from_spectrum(w, v);
  return {a0, HermitianOperator(ComplexMatrix(ComplexMatrix::Identity(d, d) - a0.matrix()))};
}

ChshStrategy random_strategy(Rng& rng, double t) {
  const Index da = 2 + static_cast<Index>(uniform01(rng) * 2), db = 2 + static_cast<Index>(uniform01(rng) * 2);
  const auto rho = uniform01(rng) < 0.5 ? random_pure_state(da * db, rng) : random_density_matrix(da * db, rng);
  AlicePovms alice{random_two_outcome(da, rng), random_two_outcome(da, rng)};
  const double e = 0.5 + uniform01(rng);
  return ChshStrategy(rho, da, db, alice, {random_hamiltonian(2 * db, e, rng), random_hamiltonian(2 * db, e, rng)}, t);
}

}  // namespace

TEST_CASE("strategy validation") {
  const auto c = canonical_optimal_strategy();
  auto bad = c.alice_povms();
  bad[1][0] = HermitianOperator::identity(2);
  CHECK_THROWS_AS(ChshStrategy(c.shared_state(), 2, 2, bad, HermitianOperator::zero(4), 0.0), ValidationError);
  CHECK_THROWS_AS(ChshStrategy(c.shared_state(), 2, 3, c.alice_povms(), HermitianOperator::zero(6), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(ChshStrategy(c.shared_state(), 2, 2, c.alice_povms(), HermitianOperator::zero(2), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(ChshStrategy(c.shared_state(), 2, 2, c.alice_povms(), diag({-1.0, 0.0, 0.0, 0.0}), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(c.with_time(-1.0), ValidationError);
}

TEST_CASE("conditional states of the maximally entangled pair") {
  const auto conds = conditional_states(canonical_optimal_strategy());
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(conds[0][a].probability == doctest::Approx(0.5));
    REQUIRE(conds[0][a].state);
    CHECK(max_diff(conds[0][a].state->matrix(), ket(2, static_cast<Index>(a)).matrix()) <= 1e-12);
    CHECK(conds[1][a].probability == doctest::Approx(0.5));
  }
}

TEST_CASE("product states carry no correlation") {
  Rng rng(61);
  const auto ra = random_density_matrix(2, rng), rb = random_density_matrix(3, rng);
  AlicePovms alice{random_two_outcome(2, rng), random_two_outcome(2, rng)};
  const ChshStrategy s(DensityMatrix(kron(ra.matrix(), rb.matrix())), 2, 3, alice, HermitianOperator::zero(6), 0.0);
  const auto conds = conditional_states(s);
  for (const auto& row : conds)
    for (const auto& c : row) {
      REQUIRE(c.state);
      CHECK(max_diff(c.state->matrix(), rb.matrix()) <= 1e-10);
    }
}

TEST_CASE("no signalling from Alice to Bob") {
  Rng rng(62);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_strategy(rng, 0.0);
    const ComplexMatrix bob = oracle::trace_out_first(s.shared_state().matrix(), static_cast<int>(s.dim_a()),
                                                      static_cast<int>(s.dim_b()));
    const auto conds = conditional_states(s);
    for (std::size_t y = 0; y < 2; ++y) {
      CHECK(conds[y][0].probability + conds[y][1].probability == doctest::Approx(1.0).epsilon(1e-12));
      ComplexMatrix mix = ComplexMatrix::Zero(s.dim_b(), s.dim_b());
      for (const auto& c : conds[y])
        if (c.state) mix += c.probability * c.state->matrix();
      CHECK(max_diff(mix, bob) <= 1e-10);
    }
  }
}

TEST_CASE("discrimination ensembles") {
  const auto ens = discrimination_ensembles(conditional_states(canonical_optimal_strategy()));
  for (std::size_t z = 0; z < 2; ++z)
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(ens.probabilities[z][x] == doctest::Approx(0.5));
      for (std::size_t y = 0; y < 2; ++y) CHECK(ens.weights[z][x][y] == doctest::Approx(0.5));
    }
  for (int z = 0; z < 2; ++z) {
    const Ensemble e = ens.ensemble(z);
    CHECK(trace_distance(e.state(0), e.state(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }

  // Alice always answers 0: each sigma collapses onto one conditional, here
  // Bob's trivial one-dimensional state.
  const auto det = discrimination_ensembles(conditional_states(deterministic_alice_strategy({0, 0}, HermitianOperator::zero(2), 0.0)));
  CHECK(det.probabilities[0][0] == doctest::Approx(1.0));
  CHECK(det.probabilities[0][1] == doctest::Approx(0.0));
  CHECK_FALSE(det.states[0][1].has_value());
  CHECK(det.probabilities[1][0] == doctest::Approx(0.5));
  CHECK(det.ensemble(0).size() == 2);

  Rng rng(63);
  for (int rep = 0; rep < 30; ++rep) {
    const auto e = discrimination_ensembles(conditional_states(random_strategy(rng, 0.0)));
    for (std::size_t z = 0; z < 2; ++z) {
      CHECK(e.probabilities[z][0] + e.probabilities[z][1] == doctest::Approx(1.0).epsilon(1e-10));
      for (std::size_t x = 0; x < 2; ++x) CHECK(e.weights[z][x][0] + e.weights[z][x][1] == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("winning probability without a deadline") {
  const auto c = canonical_optimal_strategy();
  CHECK(std::abs(p_win_unlimited(c) - kQuantumValue) <= 1e-9);
  CHECK(kQuantumValue == doctest::Approx(0.5 + 1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));

  Rng rng(64);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_strategy(rng, 0.0);
    const double helstrom = p_win_unlimited(s);
    const auto ens = discrimination_ensembles(conditional_states(s));
    const double direct = p_win_direct(s.shared_state(), s.dim_a(), s.dim_b(), s.alice_povms(), helstrom_bob_povms(ens));
    CHECK(std::abs(helstrom - direct) <= 1e-9);
    CHECK(helstrom <= kQuantumValue + 1e-9);
  }
}

TEST_CASE("deterministic classical strategies") {
  double best = 0.0;
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g) {
      const std::array<int, 2> fa{f & 1, f >> 1}, ga{g & 1, g >> 1};
      const double v = deterministic_classical_p_win(fa, ga);
      CHECK(v == oracle::chsh_classical(fa, ga));
      CHECK((v == 0.25 || v == 0.5 || v == 0.75));
      best = std::max(best, v);
    }
  CHECK(best == 0.75);

  // Bob at t = 0 answers his most likely x, i.e. the best classical reply.
  for (int f = 0; f < 4; ++f) {
    const std::array<int, 2> fa{f & 1, f >> 1};
    double reply = 0.0;
    for (int g = 0; g < 4; ++g) reply = std::max(reply, oracle::chsh_classical(fa, {g & 1, g >> 1}));
    const auto s = deterministic_alice_strategy(fa, HermitianOperator::zero(2), 0.0);
    CHECK(p_win_time_limited(s) == doctest::Approx(reply));
    CHECK(p_win_time_limited(s) <= 0.75);
  }
}

TEST_CASE("winning probability with a deadline") {
  const auto c = canonical_optimal_strategy();
  CHECK(p_win_time_limited(c) == doctest::Approx(0.5));

  Rng rng(65);
  for (int rep = 0; rep < 60; ++rep) {
    const auto s = random_strategy(rng, 4.0 * uniform01(rng));
    const double p = p_win_time_limited(s);
    CHECK(p <= p_win_unlimited(s) + 1e-9);
    CHECK(p <= tsirelson_time_bound_for(s) + 1e-9);
    CHECK(p <= 1.0 + 1e-12);
    const auto ens = discrimination_ensembles(conditional_states(s));
    const double at0 = 0.5 * (std::max(ens.probabilities[0][0], ens.probabilities[0][1]) +
                              std::max(ens.probabilities[1][0], ens.probabilities[1][1]));
    CHECK(p_win_time_limited(s.with_time(0.0)) == doctest::Approx(at0).epsilon(1e-12));
  }

  // canonical state with an attaining Hamiltonian per question
  const auto ens = discrimination_ensembles(conditional_states(c));
  std::array<HermitianOperator, 2> hs{build_attaining(ens.ensemble(0).state(0), ens.ensemble(0).state(1), 1.0).hamiltonian,
                                      build_attaining(ens.ensemble(1).state(0), ens.ensemble(1).state(1), 1.0).hamiltonian};
  const auto fast = c.with_bob_hamiltonians(hs);
  for (double t : {0.1, 0.5, 1.0, 2.0, kPi}) {
    const double p = p_win_time_limited(fast.with_time(t));
    CHECK(p <= tsirelson_time_bound_general({0.5, 0.5}, hs[0], t, 1.0) + 1e-9);
    CHECK(p <= tsirelson_time_bound(hs[0], t, 1.0) + 1e-9);
  }
  CHECK(p_win_time_limited(fast.with_time(kPi)) == doctest::Approx(kQuantumValue).epsilon(1e-9));
}

TEST_CASE("time-dependent Tsirelson bounds") {
  const auto h = diag({0.0, 0.0, 0.0, 1.0});
  CHECK(tsirelson_time_bound(h, 0.0, 1.0) == 0.75);
  CHECK(tsirelson_time_bound_general({0.5, 0.5}, h, 0.0, 1.0) == 0.5);
  CHECK(tsirelson_time_bound_general({0.75, 0.75}, h, 0.3, 1.0) == tsirelson_time_bound(h, 0.3, 1.0));
  CHECK_THROWS_AS(tsirelson_time_bound_general({0.4, 0.75}, h, 0.3, 1.0), ValidationError);

  const double t = (0.8536 - 0.75) * std::sqrt(2.0) / kGammaSmall;
  CHECK(tsirelson_time_bound(h, t, 1.0) == doctest::Approx(0.8536).epsilon(1e-12));
}

TEST_CASE("minimum time for the quantum value") {
  CHECK(min_time_for_tsirelson(1.0, 1.0, kGammaSmall) == doctest::Approx(kPi / 3.0).epsilon(1e-15));
  CHECK(min_time_for_tsirelson(2.0, 1.0, kGammaSmall) == doctest::Approx(kPi / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(min_time_for_tsirelson(0.0, 1.0, kGammaSmall), ValidationError);
  for (double e : {0.5, 1.0, 3.0}) {
    const auto h = diag({0.0, 0.0, 0.0, e});
    const double t = min_time_for_tsirelson(e, 1.0, kGammaSmall);
    CHECK(tsirelson_time_bound(h, t, 1.0) >= kQuantumValue);
  }
}

TEST_CASE("energy witness") {
  CHECK(energy_witness(0.75, 1.0, 1.0) == 0.0);
  CHECK(energy_witness(0.6, 1.0, 1.0) == 0.0);
  CHECK(energy_witness(0.80, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0) * 0.05 / kGammaLarge).epsilon(1e-15));
  CHECK_THROWS_AS(energy_witness(0.8, 0.0, 1.0), ValidationError);

  const double t = 0.1;
  const double norm = energy_witness(kQuantumValue, t, 1.0, kGammaSmall);
  CHECK(tsirelson_time_bound(diag({0.0, 0.0, 0.0, norm}), t, 1.0) == doctest::Approx(kQuantumValue).epsilon(1e-12));

  Rng rng(66);
  for (int rep = 0; rep < 50; ++rep) {
    const auto h = random_hamiltonian(4, 0.2 + 2.0 * uniform01(rng), rng);
    const double tt = 0.05 + 3.0 * uniform01(rng);
    const double q = tsirelson_time_bound(h, tt, 1.0);
    const double g = gamma_for_spectrum(h.spectrum().eigenvalues, tt, 1.0);
    CHECK(std::abs(energy_witness(q, tt, 1.0, g) - h.max_eigenvalue()) <= 1e-12 * std::max(1.0, h.max_eigenvalue()));
  }
}
