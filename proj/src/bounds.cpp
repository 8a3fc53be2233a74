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

#include "qspeed/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"

namespace qspeed {

namespace {

// The simulator removes the ground energy, so the bounds are evaluated on the
// same shifted operator.
HermitianOperator checked(const HermitianOperator& h, const char* what) {
  const double tol = 1e-9 * std::max(1.0, std::abs(h.max_eigenvalue()));
  if (h.min_eigenvalue() < -tol) {
    std::ostringstream os;
    os << what << ": Hamiltonian must be positive semidefinite (min eigenvalue " << h.min_eigenvalue() << ")";
    throw ValidationError(os.str());
  }
  return shift_to_zero_ground(h);
}

void require_time(double t, double hbar, const char* what) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError(std::string(what) + ": time must be nonnegative");
  if (!std::isfinite(hbar) || hbar <= 0.0) throw ValidationError(std::string(what) + ": hbar must be positive");
}

struct TwoStateSetup {
  Index x_max;
  double p_max;
  double p_min;
  const DensityMatrix* r_max;
  const DensityMatrix* r_min;
  ComplexMatrix embedded_max;  // rho_xmax (x) |xmax><xmax|
  ComplexMatrix embedded_min;  // rho_xmin (x) |xmax><xmax|
};

TwoStateSetup two_state_setup(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1,
                              const HermitianOperator& h, const char* what) {
  if (r0.dim() != r1.dim()) throw ValidationError(std::string(what) + ": state dimension mismatch");
  if (h.dim() != 2 * r0.dim()) {
    std::ostringstream os;
    os << what << ": Hamiltonian dimension " << h.dim() << " does not match encoding (" << r0.dim()
       << ") x ancilla (2)";
    throw ValidationError(os.str());
  }
  if (p0 < -kProbabilityTolerance || p1 < -kProbabilityTolerance || std::abs(p0 + p1 - 1.0) > kProbabilityTolerance) {
    throw ValidationError(std::string(what) + ": (p0, p1) is not a probability distribution");
  }
  const Index x_max = p0 >= p1 ? 0 : 1;
  const bool zero_is_max = x_max == 0;
  TwoStateSetup s{x_max,
                  zero_is_max ? p0 : p1,
                  zero_is_max ? p1 : p0,
                  zero_is_max ? &r0 : &r1,
                  zero_is_max ? &r1 : &r0,
                  {},
                  {}};
  s.embedded_max = embed_with_ancilla(*s.r_max, 2, x_max).state.matrix();
  s.embedded_min = embed_with_ancilla(*s.r_min, 2, x_max).state.matrix();
  return s;
}

void require_equiprobable_dims(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h,
                               const char* what) {
  two_state_setup(0.5, 0.5, r0, r1, h, what);
}

}  // namespace

double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

double gamma_factor(double k) {
  if (!(k >= 0.0)) throw ValidationError("gamma_factor: argument must be nonnegative");
  return (k > 1.0 && k < 4.0) ? kGammaLarge : kGammaSmall;
}

double gamma_for_spectrum(const RealVector& eigenvalues, double t, double hbar) {
  double gamma = kGammaSmall;
  for (double e : eigenvalues) {
    gamma = std::max(gamma, gamma_factor(std::max(0.0, t * e / hbar)));
  }
  return gamma;
}

double gamma_hat_literal(const RealVector& eigenvalues, double t, double hbar) {
  if (eigenvalues.size() == 0) return kGammaSmall;
  for (double e : eigenvalues) {
    if (gamma_factor(std::max(0.0, t * e / hbar)) != kGammaLarge) return kGammaSmall;
  }
  return kGammaLarge;
}

bool gamma_readings_differ(const RealVector& eigenvalues, double t, double hbar) {
  return gamma_for_spectrum(eigenvalues, t, hbar) != gamma_hat_literal(eigenvalues, t, hbar);
}

double cmax_energy(const HermitianOperator& h, double t, double hbar) {
  const RealVector& ev = h.spectrum().eigenvalues;
  double best_e = ev(0);
  double best = one_minus_cos(t * ev(0) / hbar);
  for (Index n = 1; n < ev.size(); ++n) {
    const double v = one_minus_cos(t * ev(n) / hbar);
    if (v > best) {
      best = v;
      best_e = ev(n);
    }
  }
  return best_e;
}

double proto_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h_in, double t,
                   double hbar) {
  const HermitianOperator h = checked(h_in, "proto_bound");
  require_time(t, hbar, "proto_bound");
  require_equiprobable_dims(r0, r1, h, "proto_bound");
  const ComplexMatrix a = embed_with_ancilla(r1, 2, 0).state.matrix() - embed_with_ancilla(r0, 2, 0).state.matrix();
  const auto split = positive_negative_split(HermitianOperator(a));
  const ComplexMatrix weight = spectral_function(h, [&](double e) { return one_minus_cos(t * e / hbar); });
  return 0.5 + trace_product(weight, split.plus.matrix());
}

double spectrum_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h_in, double t,
                      double hbar) {
  const HermitianOperator h = checked(h_in, "spectrum_bound");
  require_time(t, hbar, "spectrum_bound");
  require_equiprobable_dims(r0, r1, h, "spectrum_bound");
  return 0.5 + one_minus_cos(t * h.max_eigenvalue() / hbar) * trace_distance(r0, r1);
}

double cmax_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h_in,
                  double t, double hbar) {
  const HermitianOperator h = checked(h_in, "cmax_bound");
  require_time(t, hbar, "cmax_bound");
  const auto s = two_state_setup(p0, p1, r0, r1, h, "cmax_bound");
  const double c_max = cmax_energy(h, t, hbar);
  return s.p_max + 2.0 * one_minus_cos(t * c_max / hbar) * delta_asymmetric(s.p_min, *s.r_min, s.p_max, *s.r_max);
}

double simple_trace_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1,
                          const HermitianOperator& h_in, double t, double hbar) {
  const HermitianOperator h = checked(h_in, "simple_trace_bound");
  require_time(t, hbar, "simple_trace_bound");
  const auto s = two_state_setup(p0, p1, r0, r1, h, "simple_trace_bound");
  const double gamma = gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar);
  return s.p_max +
         gamma * t * h.max_eigenvalue() * delta_asymmetric(s.p_min, *s.r_min, s.p_max, *s.r_max) / hbar;
}

double avg_energy_two_state_bound(double p0, double p1, const DensityMatrix& r0, const DensityMatrix& r1,
                                  const HermitianOperator& h_in, double t, double hbar) {
  const HermitianOperator h = checked(h_in, "avg_energy_two_state_bound");
  require_time(t, hbar, "avg_energy_two_state_bound");
  const auto s = two_state_setup(p0, p1, r0, r1, h, "avg_energy_two_state_bound");
  const double gamma = gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar);
  const HermitianOperator diff(ComplexMatrix(s.p_min * s.embedded_min - s.p_max * s.embedded_max));
  const double bracket = trace_product(h.matrix(), absolute_value(diff).matrix()) +
                         s.p_min * trace_product(h.matrix(), s.embedded_min) -
                         s.p_max * trace_product(h.matrix(), s.embedded_max);
  return s.p_max + gamma * t * bracket / (2.0 * hbar);
}

double avg_energy_symmetrized_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h_in,
                                    double t, double hbar) {
  const HermitianOperator h = checked(h_in, "avg_energy_symmetrized_bound");
  require_time(t, hbar, "avg_energy_symmetrized_bound");
  const auto s = two_state_setup(0.5, 0.5, r0, r1, h, "avg_energy_symmetrized_bound");
  const double gamma = gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar);
  const HermitianOperator diff(ComplexMatrix(s.embedded_min - s.embedded_max));
  return 0.5 + gamma * t * trace_product(h.matrix(), absolute_value(diff).matrix()) / (4.0 * hbar);
}

double avg_energy_weakened_bound(const DensityMatrix& r0, const DensityMatrix& r1, const HermitianOperator& h_in,
                                 double t, double hbar) {
  const HermitianOperator h = checked(h_in, "avg_energy_weakened_bound");
  require_time(t, hbar, "avg_energy_weakened_bound");
  const auto s = two_state_setup(0.5, 0.5, r0, r1, h, "avg_energy_weakened_bound");
  const double gamma = gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar);
  return 0.5 + gamma * t * trace_product(h.matrix(), s.embedded_min + s.embedded_max) / (4.0 * hbar);
}

double average_energy(const Ensemble& e, const HermitianOperator& h_in) {
  const HermitianOperator h = checked(h_in, "average_energy");
  const Index n = e.size();
  if (h.dim() != e.encoding_dim() * n) {
    std::ostringstream os;
    os << "average_energy: Hamiltonian dimension " << h.dim() << " does not match encoding (" << e.encoding_dim()
       << ") x ancilla (" << n << ")";
    throw ValidationError(os.str());
  }
  const Index anc = x_max_index(e);
  double total = 0.0;
  for (Index x = 0; x < n; ++x) {
    total += e.probability(x) * trace_product(h.matrix(), embed_with_ancilla(e.state(x), n, anc).state.matrix());
  }
  return total;
}

double many_states_bound(const Ensemble& e, const HermitianOperator& h_in, double t, double hbar) {
  const HermitianOperator h = checked(h_in, "many_states_bound");
  require_time(t, hbar, "many_states_bound");
  const double energy = average_energy(e, h);
  const double gamma = gamma_for_spectrum(h.spectrum().eigenvalues, t, hbar);
  return e.probability(x_max_index(e)) + gamma * t * energy / hbar;
}

double min_distinguish_time(const Ensemble& e, const HermitianOperator& h_in, double hbar, double p_guess_target) {
  const HermitianOperator h = checked(h_in, "min_distinguish_time");
  require_time(0.0, hbar, "min_distinguish_time");
  const double p_max = e.probability(x_max_index(e));
  if (p_guess_target <= p_max) return 0.0;
  const double energy = average_energy(e, h);
  if (!(energy > 0.0)) {
    throw UnreachableError("min_distinguish_time: average energy is zero, target above p_xmax is unreachable");
  }
  // The bound reaches the target exactly when gamma(t) * t >= required.
  const double required = (p_guess_target - p_max) * hbar / energy;
  const double t_large = required / kGammaLarge;
  const RealVector& levels = h.spectrum().eigenvalues;
  if (gamma_for_spectrum(levels, t_large, hbar) == kGammaLarge) return t_large;
  // Otherwise the earliest admissible time is either where 3/pi suffices or the
  // left edge of the first 5/pi window after t_large.
  double best = required / kGammaSmall;
  for (double level : levels) {
    if (level <= 0.0) continue;
    const double window_start = hbar / level;
    if (window_start >= t_large) best = std::min(best, window_start);
  }
  return best;
}

double margolus_levitin_time(const HermitianOperator& h_in, const EmbeddedState& state, double hbar) {
  const HermitianOperator h = checked(h_in, "margolus_levitin_time");
  require_time(0.0, hbar, "margolus_levitin_time");
  if (h.dim() != state.state.dim()) throw ValidationError("margolus_levitin_time: dimension mismatch");
  const double energy = trace_product(h.matrix(), state.state.matrix());
  if (!(energy > 0.0)) throw UnreachableError("margolus_levitin_time: average energy is zero");
  return hbar * std::numbers::pi / (2.0 * energy);
}

std::vector<BoundReport> evaluate_two_state_bounds(double p0, double p1, const DensityMatrix& r0,
                                                   const DensityMatrix& r1, const HermitianOperator& h, double t,
                                                   double hbar) {
  const HermitianOperator shifted = checked(h, "evaluate_two_state_bounds");
  const RealVector& levels = shifted.spectrum().eigenvalues;
  const double gamma = gamma_for_spectrum(levels, t, hbar);
  const bool differ = gamma_readings_differ(levels, t, hbar);
  std::ostringstream digest;
  digest << "d=" << r0.dim() << " p0=" << p0 << " p1=" << p1 << " t=" << t << " hbar=" << hbar
         << " Emax=" << shifted.max_eigenvalue();
  const std::string d = digest.str();

  std::vector<BoundReport> out;
  out.push_back({"cmax_bound", cmax_bound(p0, p1, r0, r1, h, t, hbar), 0.0, d});
  out.push_back({"simple_trace_bound", simple_trace_bound(p0, p1, r0, r1, h, t, hbar), gamma, d, differ});
  out.push_back({"avg_energy_two_state_bound", avg_energy_two_state_bound(p0, p1, r0, r1, h, t, hbar), gamma, d,
                 differ});
  if (std::abs(p0 - p1) <= 1e-12) {
    out.push_back({"proto_bound", proto_bound(r0, r1, h, t, hbar), 0.0, d});
    out.push_back({"avg_energy_symmetrized_bound", avg_energy_symmetrized_bound(r0, r1, h, t, hbar), gamma, d, differ});
    out.push_back({"avg_energy_weakened_bound", avg_energy_weakened_bound(r0, r1, h, t, hbar), gamma, d, differ});
  }
  const Ensemble e({p0, p1}, {r0, r1});
  out.push_back({"many_states_bound", many_states_bound(e, h, t, hbar), gamma, d, differ});
  return out;
}

}  // namespace qspeed
