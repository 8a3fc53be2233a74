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

// Python bindings. Matrices cross the boundary as complex numpy arrays;
// operators and ensembles are rebuilt (and validated) on every call.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qspeed/attainment.hpp"
#include "qspeed/bounds.hpp"
#include "qspeed/chsh.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"
#include "qspeed/truncation.hpp"

namespace py = pybind11;
using namespace qspeed;

namespace {

Ensemble make_ensemble(const std::vector<double>& probs, const std::vector<ComplexMatrix>& states) {
  std::vector<DensityMatrix> rho;
  rho.reserve(states.size());
  for (const auto& s : states) rho.emplace_back(s);
  return Ensemble(probs, rho);
}

Protocol make_protocol(const std::vector<double>& probs, const std::vector<ComplexMatrix>& states,
                       const ComplexMatrix& h, double t, double hbar) {
  return Protocol(make_ensemble(probs, states), HermitianOperator(h), t, hbar);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-limited quantum state discrimination: simulation, bounds and constructions";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<UnreachableError>(m, "UnreachableError", PyExc_ValueError);

  m.def("trace_distance", [](const ComplexMatrix& r0, const ComplexMatrix& r1) {
    return trace_distance(DensityMatrix(r0), DensityMatrix(r1));
  });
  m.def("helstrom_guess", [](double p0, const ComplexMatrix& r0, double p1, const ComplexMatrix& r1) {
    return helstrom_guess(p0, DensityMatrix(r0), p1, DensityMatrix(r1));
  });
  m.def("delta_asymmetric", [](double pa, const ComplexMatrix& ra, double pb, const ComplexMatrix& rb) {
    return delta_asymmetric(pa, DensityMatrix(ra), pb, DensityMatrix(rb));
  });

  m.def("success_probability",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h, double t,
           double hbar) { return success_probability(make_protocol(probs, states, h, t, hbar)); },
        py::arg("probabilities"), py::arg("states"), py::arg("hamiltonian"), py::arg("t"), py::arg("hbar") = 1.0);
  m.def("measurement_operators",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h, double t,
           double hbar) {
          std::vector<ComplexMatrix> out;
          for (const auto& op : measurement_operators(make_protocol(probs, states, h, t, hbar))) out.push_back(op.matrix());
          return out;
        },
        py::arg("probabilities"), py::arg("states"), py::arg("hamiltonian"), py::arg("t"), py::arg("hbar") = 1.0);
  m.def("optimal_measurement",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, std::size_t max_iterations) {
          const auto r = optimal_measurement_iterate(make_ensemble(probs, states), max_iterations);
          std::vector<ComplexMatrix> povm;
          for (const auto& e : r.povm) povm.push_back(e.matrix());
          return py::make_tuple(r.p_guess, povm, r.converged);
        },
        py::arg("probabilities"), py::arg("states"), py::arg("max_iterations") = 10000);

  m.def("gamma_factor", &gamma_factor);
  m.def("one_minus_cos", &one_minus_cos);
  m.def("two_state_bounds",
        [](double p0, double p1, const ComplexMatrix& r0, const ComplexMatrix& r1, const ComplexMatrix& h, double t,
           double hbar) {
          py::dict out;
          for (const auto& r : evaluate_two_state_bounds(p0, p1, DensityMatrix(r0), DensityMatrix(r1),
                                                         HermitianOperator(h), t, hbar)) {
            out[py::str(r.bound_name)] = r.value;
          }
          return out;
        },
        py::arg("p0"), py::arg("p1"), py::arg("r0"), py::arg("r1"), py::arg("hamiltonian"), py::arg("t"),
        py::arg("hbar") = 1.0);
  m.def("many_states_bound",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h, double t,
           double hbar) { return many_states_bound(make_ensemble(probs, states), HermitianOperator(h), t, hbar); },
        py::arg("probabilities"), py::arg("states"), py::arg("hamiltonian"), py::arg("t"), py::arg("hbar") = 1.0);
  m.def("min_distinguish_time",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h,
           double target, double hbar) {
          return min_distinguish_time(make_ensemble(probs, states), HermitianOperator(h), hbar, target);
        },
        py::arg("probabilities"), py::arg("states"), py::arg("hamiltonian"), py::arg("target"), py::arg("hbar") = 1.0);

  m.def("build_attaining",
        [](const ComplexMatrix& r0, const ComplexMatrix& r1, double e_max) {
          const auto a = build_attaining(DensityMatrix(r0), DensityMatrix(r1), e_max);
          py::dict out;
          out["h_hat"] = a.h_hat.matrix();
          out["hamiltonian"] = a.hamiltonian.matrix();
          out["pi_plus"] = a.pi_plus.matrix();
          out["pi_minus"] = a.pi_minus.matrix();
          out["degenerate_difference"] = a.degenerate_difference;
          return out;
        },
        py::arg("r0"), py::arg("r1"), py::arg("e_max"));
  m.def("attaining_success_closed_form",
        [](const ComplexMatrix& r0, const ComplexMatrix& r1, double e_max, double t, double hbar) {
          return attaining_success_closed_form(DensityMatrix(r0), DensityMatrix(r1), e_max, t, hbar);
        },
        py::arg("r0"), py::arg("r1"), py::arg("e_max"), py::arg("t"), py::arg("hbar") = 1.0);
  m.def("perfect_discrimination_time", &perfect_discrimination_time, py::arg("e_max"), py::arg("hbar") = 1.0);

  m.def("canonical_chsh_p_win", [] { return p_win_unlimited(canonical_optimal_strategy()); });
  m.def("deterministic_classical_p_win", &deterministic_classical_p_win);
  m.def("tsirelson_time_bound",
        [](const ComplexMatrix& h, double t, double hbar) { return tsirelson_time_bound(HermitianOperator(h), t, hbar); },
        py::arg("hamiltonian"), py::arg("t"), py::arg("hbar") = 1.0);
  m.def("min_time_for_tsirelson", &min_time_for_tsirelson, py::arg("e_max"), py::arg("hbar"), py::arg("gamma"));
  m.def("energy_witness", &energy_witness, py::arg("q_observed"), py::arg("t"), py::arg("hbar") = 1.0,
        py::arg("gamma") = kGammaLarge);

  m.def("truncation_gap",
        [](const std::vector<double>& probs, const std::vector<ComplexMatrix>& states, const ComplexMatrix& h, double t,
           double epsilon, double hbar) {
          const Protocol p = make_protocol(probs, states, h, t, hbar);
          std::vector<EmbeddedState> embedded;
          for (Index x = 0; x < p.symbols(); ++x) embedded.push_back(p.embedded(x));
          const auto tr = truncation_projector(p.hamiltonian(), embedded, epsilon);
          py::dict out;
          out["gap"] = truncation_success_gap(p, tr);
          out["rank"] = tr.kept_levels.size();
          out["max_distance"] = tr.max_distance;
          return out;
        },
        py::arg("probabilities"), py::arg("states"), py::arg("hamiltonian"), py::arg("t"), py::arg("epsilon"),
        py::arg("hbar") = 1.0);
}
