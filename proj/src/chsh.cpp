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

#include "qspeed/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"

namespace qspeed {

namespace {

constexpr double kPovmTolerance = 1e-9;

void validate_alice(const AlicePovms& alice, Index dim_a) {
  const ComplexMatrix eye = ComplexMatrix::Identity(dim_a, dim_a);
  for (std::size_t y = 0; y < 2; ++y) {
    for (std::size_t a = 0; a < 2; ++a) {
      if (alice[y][a].dim() != dim_a) throw ValidationError("chsh: Alice POVM dimension mismatch");
      if (!is_psd(alice[y][a], kPovmTolerance)) {
        std::ostringstream os;
        os << "chsh: Alice POVM element (y=" << y << ", a=" << a << ") is not PSD";
        throw ValidationError(os.str());
      }
    }
    if (max_abs_entry(alice[y][0].matrix() + alice[y][1].matrix() - eye) > kPovmTolerance) {
      std::ostringstream os;
      os << "chsh: Alice POVM for y=" << y << " does not sum to identity";
      throw ValidationError(os.str());
    }
  }
}

double bob_gamma_norm(const HermitianOperator& h_in, double t, double hbar) {
  const HermitianOperator h = shift_to_zero_ground(h_in);
  return gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar) * h.max_eigenvalue();
}

void require_time(double t, double hbar, const char* what) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError(std::string(what) + ": time must be nonnegative");
  if (!std::isfinite(hbar) || hbar <= 0.0) throw ValidationError(std::string(what) + ": hbar must be positive");
}

void require_psd_hamiltonian(const HermitianOperator& h, const char* what) {
  const double tol = 1e-9 * std::max(1.0, std::abs(h.max_eigenvalue()));
  if (h.min_eigenvalue() < -tol) throw ValidationError(std::string(what) + ": Hamiltonian must be PSD");
}

}  // namespace

ChshStrategy::ChshStrategy(DensityMatrix shared_state, Index dim_a, Index dim_b, AlicePovms alice_povms,
                           std::array<HermitianOperator, 2> bob_hamiltonians, double time, double hbar)
    : shared_state_(std::move(shared_state)),
      dim_a_(dim_a),
      dim_b_(dim_b),
      alice_povms_(std::move(alice_povms)),
      bob_hamiltonians_(std::move(bob_hamiltonians)),
      time_(time),
      hbar_(hbar) {
  if (dim_a < 1 || dim_b < 1) throw ValidationError("chsh: register dimensions must be positive");
  if (shared_state_.dim() != dim_a * dim_b) throw ValidationError("chsh: shared state dimension is not dim_a * dim_b");
  validate_alice(alice_povms_, dim_a);
  for (const auto& h : bob_hamiltonians_) {
    if (h.dim() != 2 * dim_b) throw ValidationError("chsh: Bob Hamiltonian must act on B (x) ancilla(2)");
    require_psd_hamiltonian(h, "chsh");
  }
  require_time(time, hbar, "chsh");
}

ChshStrategy::ChshStrategy(DensityMatrix shared_state, Index dim_a, Index dim_b, AlicePovms alice_povms,
                           const HermitianOperator& bob_hamiltonian, double time, double hbar)
    : ChshStrategy(std::move(shared_state), dim_a, dim_b, std::move(alice_povms), {bob_hamiltonian, bob_hamiltonian},
                   time, hbar) {}

ChshStrategy ChshStrategy::with_time(double time) const {
  return ChshStrategy(shared_state_, dim_a_, dim_b_, alice_povms_, bob_hamiltonians_, time, hbar_);
}

ChshStrategy ChshStrategy::with_clock(double time, double hbar) const {
  return ChshStrategy(shared_state_, dim_a_, dim_b_, alice_povms_, bob_hamiltonians_, time, hbar);
}

ChshStrategy ChshStrategy::with_bob_hamiltonians(std::array<HermitianOperator, 2> h) const {
  return ChshStrategy(shared_state_, dim_a_, dim_b_, alice_povms_, std::move(h), time_, hbar_);
}

Ensemble ConditionalEnsembles::ensemble(int z) const {
  const auto zi = static_cast<std::size_t>(z);
  const auto& st = states.at(zi);
  const DensityMatrix& s0 = st[0] ? *st[0] : *st[1];
  const DensityMatrix& s1 = st[1] ? *st[1] : *st[0];
  return Ensemble({probabilities[zi][0], probabilities[zi][1]}, {s0, s1});
}

ConditionalStates conditional_states(const ChshStrategy& s) {
  const Index da = s.dim_a();
  const Index db = s.dim_b();
  const ComplexMatrix eye_b = ComplexMatrix::Identity(db, db);
  ConditionalStates out{};
  for (std::size_t y = 0; y < 2; ++y) {
    for (std::size_t a = 0; a < 2; ++a) {
      const ComplexMatrix projected = kron(s.alice_povms()[y][a].matrix(), eye_b) * s.shared_state().matrix();
      const ComplexMatrix bob = partial_trace_encoding(projected, da, db);
      const double p = bob.trace().real();
      if (p <= kOutcomeCutoff) {
        out[y][a] = {std::max(p, 0.0), std::nullopt};
      } else {
        const ComplexMatrix normalized = bob / p;
        out[y][a] = {p, DensityMatrix(ComplexMatrix(0.5 * (normalized + normalized.adjoint())))};
      }
    }
  }
  return out;
}

ConditionalEnsembles discrimination_ensembles(const ConditionalStates& conds) {
  ConditionalEnsembles out{};
  for (std::size_t z = 0; z < 2; ++z) {
    for (std::size_t x = 0; x < 2; ++x) {
      // Bob's target x corresponds to Alice's answer a_y = x xor (y z).
      std::array<double, 2> w{};
      for (std::size_t y = 0; y < 2; ++y) w[y] = conds[y][x ^ (y & z)].probability;
      const double total = w[0] + w[1];
      out.probabilities[z][x] = 0.5 * total;
      if (total <= kOutcomeCutoff) {
        out.weights[z][x] = {0.0, 0.0};
        out.states[z][x] = std::nullopt;
        continue;
      }
      ComplexMatrix sigma;
      for (std::size_t y = 0; y < 2; ++y) {
        out.weights[z][x][y] = w[y] / total;
        const auto& c = conds[y][x ^ (y & z)];
        if (!c.state) continue;
        const ComplexMatrix term = out.weights[z][x][y] * c.state->matrix();
        sigma = sigma.size() == 0 ? term : ComplexMatrix(sigma + term);
      }
      out.states[z][x] = DensityMatrix(sigma);
    }
    const double sum = out.probabilities[z][0] + out.probabilities[z][1];
    out.probabilities[z][0] /= sum;
    out.probabilities[z][1] /= sum;
  }
  return out;
}

double p_win_unlimited(const ChshStrategy& s) {
  const ConditionalEnsembles ens = discrimination_ensembles(conditional_states(s));
  double total = 0.0;
  for (int z = 0; z < 2; ++z) {
    const Ensemble e = ens.ensemble(z);
    total += helstrom_guess(e.probability(0), e.state(0), e.probability(1), e.state(1));
  }
  return 0.5 * total;
}

BobPovms helstrom_bob_povms(const ConditionalEnsembles& ens) {
  auto povm_for = [&](int z) {
    const Ensemble e = ens.ensemble(z);
    const HermitianOperator a(ComplexMatrix(e.probability(1) * e.state(1).matrix() -
                                            e.probability(0) * e.state(0).matrix()));
    HermitianOperator guess_one = positive_projector(a);
    HermitianOperator guess_zero(ComplexMatrix(ComplexMatrix::Identity(a.dim(), a.dim()) - guess_one.matrix()));
    return std::array<HermitianOperator, 2>{std::move(guess_zero), std::move(guess_one)};
  };
  return {povm_for(0), povm_for(1)};
}

double p_win_direct(const DensityMatrix& shared_state, Index dim_a, Index dim_b, const AlicePovms& alice,
                    const BobPovms& bob) {
  if (shared_state.dim() != dim_a * dim_b) throw ValidationError("p_win_direct: shared state dimension mismatch");
  double total = 0.0;
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t z = 0; z < 2; ++z)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          if ((a ^ b) != (y & z)) continue;
          total += trace_product(kron(alice[y][a].matrix(), bob[z][b].matrix()), shared_state.matrix());
        }
  return 0.25 * total;
}

double deterministic_classical_p_win(std::array<int, 2> f, std::array<int, 2> g) {
  int wins = 0;
  for (int y = 0; y < 2; ++y)
    for (int z = 0; z < 2; ++z)
      if (((f[static_cast<std::size_t>(y)] ^ g[static_cast<std::size_t>(z)]) & 1) == (y & z)) ++wins;
  return 0.25 * wins;
}

double p_win_time_limited(const ChshStrategy& s) {
  const ConditionalEnsembles ens = discrimination_ensembles(conditional_states(s));
  double total = 0.0;
  for (int z = 0; z < 2; ++z) {
    total += success_probability(Protocol(ens.ensemble(z), s.bob_hamiltonian(z), s.time(), s.hbar()));
  }
  return 0.5 * total;
}

double tsirelson_time_bound_general(std::array<double, 2> p_xmax_by_z, const HermitianOperator& h, double t,
                                    double hbar) {
  require_time(t, hbar, "tsirelson_time_bound_general");
  require_psd_hamiltonian(h, "tsirelson_time_bound_general");
  for (double p : p_xmax_by_z) {
    if (p < 0.5 - kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
      throw ValidationError("tsirelson_time_bound_general: p_xmax must lie in [1/2, 1]");
    }
  }
  return 0.5 * (p_xmax_by_z[0] + p_xmax_by_z[1]) + bob_gamma_norm(h, t, hbar) * t / (std::numbers::sqrt2 * hbar);
}

double tsirelson_time_bound(const HermitianOperator& h, double t, double hbar) {
  return tsirelson_time_bound_general({0.75, 0.75}, h, t, hbar);
}

double tsirelson_time_bound_uniform(const HermitianOperator& h, double t, double hbar) {
  require_time(t, hbar, "tsirelson_time_bound_uniform");
  require_psd_hamiltonian(h, "tsirelson_time_bound_uniform");
  return 0.5 + bob_gamma_norm(h, t, hbar) * t / (2.0 * std::numbers::sqrt2 * hbar);
}

double tsirelson_time_bound_for(const ChshStrategy& s) {
  const ConditionalEnsembles ens = discrimination_ensembles(conditional_states(s));
  double p_sum = 0.0;
  for (const auto& p : ens.probabilities) p_sum += std::max(p[0], p[1]);
  const double gn =
      std::max(bob_gamma_norm(s.bob_hamiltonian(0), s.time(), s.hbar()), bob_gamma_norm(s.bob_hamiltonian(1), s.time(), s.hbar()));
  return 0.5 * p_sum + gn * s.time() / (std::numbers::sqrt2 * s.hbar());
}

double min_time_for_tsirelson(double e_max, double hbar, double gamma) {
  if (!(e_max > 0.0)) throw ValidationError("min_time_for_tsirelson: e_max must be positive");
  if (!(hbar > 0.0) || !(gamma > 0.0)) throw ValidationError("min_time_for_tsirelson: hbar and gamma must be positive");
  return hbar / (gamma * e_max);
}

double energy_witness(double q_observed, double t, double hbar, double gamma) {
  if (!(t > 0.0)) throw ValidationError("energy_witness: t must be positive");
  if (!(hbar > 0.0) || !(gamma > 0.0)) throw ValidationError("energy_witness: hbar and gamma must be positive");
  return std::max(0.0, std::numbers::sqrt2 * hbar * (q_observed - 0.75) / (gamma * t));
}

ChshStrategy canonical_optimal_strategy() {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  ComplexMatrix p0(2, 2), p1(2, 2), plus(2, 2), minus(2, 2);
  p0 << 1.0, 0.0, 0.0, 0.0;
  p1 << 0.0, 0.0, 0.0, 1.0;
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;
  AlicePovms alice{std::array<HermitianOperator, 2>{HermitianOperator(p0), HermitianOperator(p1)},
                   std::array<HermitianOperator, 2>{HermitianOperator(plus), HermitianOperator(minus)}};
  return ChshStrategy(DensityMatrix::pure(phi), 2, 2, std::move(alice), HermitianOperator::zero(4), 0.0);
}

ChshStrategy deterministic_alice_strategy(std::array<int, 2> f, const HermitianOperator& bob_hamiltonian, double time,
                                          double hbar) {
  const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
  const ComplexMatrix none = ComplexMatrix::Zero(1, 1);
  auto povm = [&](int a) {
    return std::array<HermitianOperator, 2>{HermitianOperator(a == 0 ? one : none),
                                            HermitianOperator(a == 0 ? none : one)};
  };
  AlicePovms alice{povm(f[0] & 1), povm(f[1] & 1)};
  return ChshStrategy(DensityMatrix::basis(1, 0), 1, 1, std::move(alice), bob_hamiltonian, time, hbar);
}

}  // namespace qspeed
