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

// Numerical search oracles: a randomized Hamiltonian search for the
// time-limited problem and a fixed-point POVM iteration for the
// time-unlimited one.

#include <algorithm>
#include <cmath>

#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"
#include "qspeed/random.hpp"

namespace qspeed {

namespace {

struct Candidate {
  ComplexMatrix generator;  // Hermitian, arbitrary scale
  double scale;             // fraction of e_max actually used, in [0, 1]
};

// Affine map of the generator onto [0, scale * e_max].
HermitianOperator realize(const Candidate& c, double e_max) {
  const HermitianOperator g(c.generator);
  const double lo = g.min_eigenvalue();
  const double spread = g.max_eigenvalue() - lo;
  const Index n = g.dim();
  if (spread < 1e-14 || c.scale <= 0.0) return HermitianOperator::zero(n);
  const ComplexMatrix shifted = g.matrix() - lo * ComplexMatrix::Identity(n, n);
  return HermitianOperator(ComplexMatrix(shifted * (c.scale * e_max / spread)));
}

ComplexMatrix hermitian_noise(Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint()) / std::sqrt(static_cast<double>(n));
}

}  // namespace

HamiltonianSearchResult optimize_hamiltonian(const Ensemble& e, double t, double e_max, double hbar,
                                             std::size_t budget, std::uint64_t seed) {
  if (!(e_max > 0.0)) throw ValidationError("optimize_hamiltonian: e_max must be positive");
  const Index n = e.encoding_dim() * e.size();
  HermitianOperator best_h = HermitianOperator::zero(n);
  double best_p = success_probability(Protocol(e, best_h, t, hbar));
  if (budget == 0) return {best_h, best_p, 0};

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t restart_every = std::max<std::size_t>(50, budget / 6);
  std::size_t used = 0;

  while (used < budget) {
    Candidate current{hermitian_noise(n, rng), 1.0};
    HermitianOperator h = realize(current, e_max);
    double value = success_probability(Protocol(e, h, t, hbar));
    ++used;
    if (value > best_p) {
      best_p = value;
      best_h = h;
    }
    double step = 0.5;
    const std::size_t stop = std::min(budget, used + restart_every);
    while (used < stop && step > 1e-6) {
      Candidate trial{current.generator + step * hermitian_noise(n, rng),
                      std::clamp(current.scale + 0.25 * step * normal(rng), 0.0, 1.0)};
      HermitianOperator trial_h = realize(trial, e_max);
      const double trial_value = success_probability(Protocol(e, trial_h, t, hbar));
      ++used;
      if (trial_value > value) {
        current = std::move(trial);
        value = trial_value;
        step *= 1.5;
        if (value > best_p) {
          best_p = value;
          best_h = trial_h;
        }
      } else {
        step *= 0.9;
      }
    }
  }
  return {best_h, best_p, used};
}

double guessing_probability(const Ensemble& e, const std::vector<HermitianOperator>& povm) {
  if (static_cast<Index>(povm.size()) != e.size()) throw ValidationError("guessing_probability: POVM size mismatch");
  double total = 0.0;
  for (Index x = 0; x < e.size(); ++x) {
    total += e.probability(x) * trace_product(povm[static_cast<std::size_t>(x)].matrix(), e.state(x).matrix());
  }
  return total;
}

MeasurementSearchResult optimal_measurement_iterate(const Ensemble& e, std::size_t max_iterations) {
  const Index d = e.encoding_dim();
  const auto n = static_cast<std::size_t>(e.size());
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  if (n == 1) return {{HermitianOperator(eye)}, 1.0, 0, true};

  std::vector<ComplexMatrix> povm(n, eye / static_cast<double>(n));
  std::vector<ComplexMatrix> weighted(n);
  for (std::size_t x = 0; x < n; ++x) weighted[x] = e.probability(static_cast<Index>(x)) * e.state(static_cast<Index>(x)).matrix();

  auto evaluate = [&](const std::vector<ComplexMatrix>& m) {
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) total += trace_product(m[x], weighted[x]);
    return total;
  };

  std::vector<ComplexMatrix> best = povm;
  double best_p = evaluate(povm);
  double previous = best_p;
  bool converged = false;
  std::size_t it = 0;
  const auto x_max = static_cast<std::size_t>(x_max_index(e));

  // Jezek-Rehacek-Fiurasek update:
  //   Pi_x <- L^-1 (p_x rho_x) Pi_x (p_x rho_x) L^-1,
  //   L = (sum_x (p_x rho_x) Pi_x (p_x rho_x))^(1/2).
  // Directions outside the support of L are assigned to x_max.
  for (; it < max_iterations; ++it) {
    std::vector<ComplexMatrix> sandwiched(n);
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (std::size_t x = 0; x < n; ++x) {
      sandwiched[x] = weighted[x] * povm[x] * weighted[x];
      total += sandwiched[x];
    }
    const HermitianOperator g(ComplexMatrix(0.5 * (total + total.adjoint())));
    const double cutoff = 1e-14 * std::max(1.0, g.max_eigenvalue());
    const ComplexMatrix inv_sqrt = spectral_function(g, [&](double l) { return l > cutoff ? 1.0 / std::sqrt(l) : 0.0; });
    const ComplexMatrix kernel = spectral_function(g, [&](double l) { return l > cutoff ? 0.0 : 1.0; });
    for (std::size_t x = 0; x < n; ++x) {
      ComplexMatrix next = inv_sqrt * sandwiched[x] * inv_sqrt;
      if (x == x_max) next += kernel;
      povm[x] = 0.5 * (next + next.adjoint());
    }
    const double value = evaluate(povm);
    if (value > best_p) {
      best_p = value;
      best = povm;
    }
    if (std::abs(value - previous) <= 1e-10 * std::abs(previous)) {
      converged = true;
      ++it;
      break;
    }
    previous = value;
  }

  std::vector<HermitianOperator> out;
  out.reserve(n);
  for (auto& m : best) out.emplace_back(m);
  return {std::move(out), best_p, it, converged};
}

}  // namespace qspeed
