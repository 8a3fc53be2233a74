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

#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "io.hpp"
#include "json.hpp"
#include "qspeed/attainment.hpp"
#include "qspeed/bounds.hpp"
#include "qspeed/chsh.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/protocol.hpp"
#include "qspeed/random.hpp"
#include "qspeed/truncation.hpp"

namespace qspeed::cli {

namespace {

// Rows whose bound_value is a time rather than a probability.
const std::set<std::string>& time_rows() {
  static const std::set<std::string> names{"min_distinguish_time", "margolus_levitin_time"};
  return names;
}

struct Context {
  const SweepSpec& spec;
  double hbar;
  std::vector<Row> rows;

  void add(const std::string& id, double t, double p, const std::string& name, double value, double gamma) {
    const bool probability = time_rows().count(name) == 0;
    const double shown = probability && spec.capped ? std::min(value, 1.0) : value;
    rows.push_back({spec.experiment, id, t, p, name, shown, gamma});
  }
};

int instance_count(const SweepSpec& spec, int fallback) { return spec.instances > 0 ? spec.instances : fallback; }

double gamma_of(const HermitianOperator& h, double t, double hbar) {
  return gamma_for_spectrum(shift_to_zero_ground(h).spectrum().eigenvalues, t, hbar);
}

std::vector<EnsembleInstance> generated_ensembles(const SweepSpec& spec, Index symbols, int count, Rng& rng,
                                                  bool alternate_equiprobable) {
  std::vector<EnsembleInstance> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> p = (alternate_equiprobable && k % 2 == 0)
                                ? std::vector<double>(static_cast<std::size_t>(symbols), 1.0 / static_cast<double>(symbols))
                                : random_distribution(symbols, rng);
    std::vector<DensityMatrix> states;
    for (Index x = 0; x < symbols; ++x) states.push_back(random_density_matrix(spec.dim, rng));
    HermitianOperator h = random_hamiltonian(spec.dim * symbols, spec.e_max, rng);
    out.push_back({"gen" + std::to_string(k), Ensemble(p, states), std::move(h)});
  }
  return out;
}

const HermitianOperator& require_hamiltonian(const EnsembleInstance& inst) {
  if (!inst.hamiltonian) throw ValidationError("instance '" + inst.id + "': this experiment needs a 'hamiltonian'");
  return *inst.hamiltonian;
}

void require_symbols(const EnsembleInstance& inst, Index n, const std::string& experiment) {
  if (inst.ensemble.size() != n) {
    throw ValidationError("instance '" + inst.id + "': " + experiment + " needs " + std::to_string(n) + " states");
  }
}

EnsembleInstance orthogonal_qubits(double e_max) {
  const DensityMatrix r0 = DensityMatrix::basis(2, 0);
  const DensityMatrix r1 = DensityMatrix::basis(2, 1);
  return {"orthogonal-qubits", Ensemble({0.5, 0.5}, {r0, r1}), build_attaining(r0, r1, e_max).hamiltonian};
}

std::vector<EnsembleInstance> ensemble_source(const InputDocument* doc, std::vector<EnsembleInstance> generated) {
  if (!doc) return generated;
  if (doc->ensembles.empty()) throw ValidationError("input holds no ensemble instances");
  return doc->ensembles;
}

void two_state_bounds(Context& c, const std::vector<EnsembleInstance>& instances) {
  for (const auto& inst : instances) {
    require_symbols(inst, 2, c.spec.experiment);
    const HermitianOperator& h = require_hamiltonian(inst);
    const Ensemble& e = inst.ensemble;
    const double p0 = e.probability(0), p1 = e.probability(1);
    const double top = shift_to_zero_ground(h).max_eigenvalue();
    for (double t : c.spec.time_grid) {
      const double p = success_probability(Protocol(e, h, t, c.hbar));
      for (const auto& r : evaluate_two_state_bounds(p0, p1, e.state(0), e.state(1), h, t, c.hbar)) {
        c.add(inst.id, t, p, r.bound_name, r.value, r.gamma_used);
      }
      if (std::abs(p0 - p1) <= 1e-12 && t * top / c.hbar <= std::numbers::pi) {
        c.add(inst.id, t, p, "spectrum_bound", spectrum_bound(e.state(0), e.state(1), h, t, c.hbar), 0.0);
      }
    }
  }
}

void n_state_bounds(Context& c, const std::vector<EnsembleInstance>& instances) {
  for (const auto& inst : instances) {
    const HermitianOperator& h = require_hamiltonian(inst);
    for (double t : c.spec.time_grid) {
      const double p = success_probability(Protocol(inst.ensemble, h, t, c.hbar));
      c.add(inst.id, t, p, "many_states_bound", many_states_bound(inst.ensemble, h, t, c.hbar), gamma_of(h, t, c.hbar));
    }
  }
}

void attainment_curve(Context& c, const std::vector<EnsembleInstance>& instances) {
  for (const auto& inst : instances) {
    require_symbols(inst, 2, c.spec.experiment);
    const Ensemble& e = inst.ensemble;
    if (std::abs(e.probability(0) - e.probability(1)) > 1e-12) {
      throw ValidationError("instance '" + inst.id + "': attainment-curve needs equal priors");
    }
    const auto& r0 = e.state(0);
    const auto& r1 = e.state(1);
    const AttainingConstruction a = build_attaining(r0, r1, c.spec.e_max);
    for (double t : c.spec.time_grid) {
      const double p = success_probability(Protocol(e, a.hamiltonian, t, c.hbar));
      c.add(inst.id, t, p, "attaining_closed_form", attaining_success_closed_form(r0, r1, c.spec.e_max, t, c.hbar), 0.0);
      c.add(inst.id, t, p, "spectrum_bound", spectrum_bound(r0, r1, a.hamiltonian, t, c.hbar), 0.0);
      c.add(inst.id, t, p, "proto_bound", proto_bound(r0, r1, a.hamiltonian, t, c.hbar), 0.0);
      c.add(inst.id, t, p, "cmax_bound", cmax_bound(0.5, 0.5, r0, r1, a.hamiltonian, t, c.hbar), 0.0);
    }
  }
}

ChshStrategy random_strategy(Index da, Index db, double e_max, Rng& rng) {
  const DensityMatrix shared = random_density_matrix(da * db, rng);
  auto measurement = [&] {
    // Projective two-outcome measurement with a random split of a Haar basis.
    const ComplexMatrix u = haar_unitary(da, rng);
    const Index k = static_cast<Index>(uniform01(rng) * static_cast<double>(da + 1));
    ComplexMatrix first = ComplexMatrix::Zero(da, da);
    for (Index j = 0; j < std::min(k, da); ++j) first += u.col(j) * u.col(j).adjoint();
    const ComplexMatrix second = ComplexMatrix::Identity(da, da) - first;
    return std::array<HermitianOperator, 2>{HermitianOperator(first), HermitianOperator(second)};
  };
  AlicePovms alice{measurement(), measurement()};
  std::array<HermitianOperator, 2> bob{random_hamiltonian(2 * db, e_max, rng), random_hamiltonian(2 * db, e_max, rng)};
  return ChshStrategy(shared, da, db, std::move(alice), std::move(bob), 0.0);
}

ChshStrategy canonical_with_attaining_bob(double e_max) {
  const ChshStrategy s = canonical_optimal_strategy();
  const ConditionalEnsembles ens = discrimination_ensembles(conditional_states(s));
  std::array<HermitianOperator, 2> bob{HermitianOperator::zero(4), HermitianOperator::zero(4)};
  for (int z = 0; z < 2; ++z) {
    const Ensemble e = ens.ensemble(z);
    bob[static_cast<std::size_t>(z)] = build_attaining(e.state(0), e.state(1), e_max).hamiltonian;
  }
  return s.with_bob_hamiltonians(std::move(bob));
}

void chsh_bounds(Context& c, const InputDocument* doc, Rng& rng) {
  std::vector<std::pair<std::string, ChshStrategy>> strategies;
  if (doc) {
    if (doc->strategies.empty()) throw ValidationError("input holds no chsh instances");
    for (const auto& s : doc->strategies) strategies.emplace_back(s.id, s.strategy);
  } else {
    strategies.emplace_back("canonical", canonical_with_attaining_bob(c.spec.e_max));
    const int count = instance_count(c.spec, 1);
    for (int k = 1; k < count; ++k) {
      strategies.emplace_back("gen" + std::to_string(k), random_strategy(c.spec.dim, c.spec.dim, c.spec.e_max, rng));
    }
  }
  for (const auto& [id, base] : strategies) {
    for (double t : c.spec.time_grid) {
      const ChshStrategy s = base.with_clock(t, c.hbar);
      const double p = p_win_time_limited(s);
      // The larger of the two per-question bounds covers both questions.
      double best = -1.0, gamma = 0.0;
      for (int z = 0; z < 2; ++z) {
        const double v = tsirelson_time_bound(s.bob_hamiltonian(z), t, c.hbar);
        if (v > best) {
          best = v;
          gamma = gamma_of(s.bob_hamiltonian(z), t, c.hbar);
        }
      }
      c.add(id, t, p, "tsirelson_time_bound", best, gamma);
    }
  }
}

void ml_time(Context& c, const std::vector<EnsembleInstance>& instances) {
  for (const auto& inst : instances) {
    const HermitianOperator& h = require_hamiltonian(inst);
    const Ensemble& e = inst.ensemble;
    const Index x_max = x_max_index(e);
    bool pure = true;
    for (Index x = 0; x < e.size(); ++x) pure = pure && std::abs(e.state(x).purity() - 1.0) <= 1e-9;
    // Reaching P = 1 moves every other pure input to an orthogonal ancilla
    // sector, so the ML time of each such input bounds the time from below.
    std::optional<double> ml;
    if (pure) {
      for (Index x = 0; x < e.size(); ++x) {
        if (x == x_max || e.probability(x) <= 0.0) continue;
        const EmbeddedState s = embed_with_ancilla(e.state(x), e.size(), x_max);
        try {
          const double v = margolus_levitin_time(h, s, c.hbar);
          ml = ml ? std::max(*ml, v) : v;
        } catch (const UnreachableError&) {
          ml = std::numeric_limits<double>::infinity();
        }
      }
    }
    for (double t : c.spec.time_grid) {
      const double p = success_probability(Protocol(e, h, t, c.hbar));
      c.add(inst.id, t, p, "many_states_bound", many_states_bound(e, h, t, c.hbar), gamma_of(h, t, c.hbar));
      c.add(inst.id, t, p, "min_distinguish_time", min_distinguish_time(e, h, c.hbar, p - 1e-12), 0.0);
      if (ml && std::isfinite(*ml)) c.add(inst.id, t, p, "margolus_levitin_time", *ml, 0.0);
    }
  }
}

void truncation(Context& c, const std::vector<EnsembleInstance>& instances) {
  for (double eps : c.spec.epsilons) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  }
  for (const auto& inst : instances) {
    const HermitianOperator& h_in = require_hamiltonian(inst);
    const Protocol base(inst.ensemble, h_in, 0.0, c.hbar);
    std::vector<EmbeddedState> states;
    for (Index x = 0; x < base.symbols(); ++x) states.push_back(base.embedded(x));
    std::vector<TruncationResult> cuts;
    for (double eps : c.spec.epsilons) cuts.push_back(truncation_projector(base.hamiltonian(), states, eps));
    for (double t : c.spec.time_grid) {
      const Protocol at = base.with_time(t);
      const double p = success_probability(at);
      for (const auto& cut : cuts) {
        const Protocol truncated(inst.ensemble, cut.truncated_h, t, c.hbar, base.ancilla_index());
        c.add(inst.id, t, p, "truncated_plus_2eps[" + format_number(cut.epsilon) + "]",
              success_probability(truncated) + 2.0 * cut.epsilon, 0.0);
      }
    }
  }
}

void assert_dominance(const std::vector<Row>& rows) {
  std::ostringstream os;
  int failures = 0;
  for (const auto& r : rows) {
    bool ok = true;
    if (r.bound_name == "margolus_levitin_time") {
      ok = r.p_succ_sim < 1.0 - kDominanceTolerance || r.t >= r.bound_value * (1.0 - kDominanceTolerance);
    } else if (r.bound_name == "min_distinguish_time") {
      ok = r.bound_value <= r.t * (1.0 + kDominanceTolerance) + kDominanceTolerance;
    } else {
      ok = r.bound_value >= r.p_succ_sim - kDominanceTolerance;
    }
    if (!ok) {
      if (failures < 5) {
        os << "\n  " << r.instance_id << " t=" << format_number(r.t) << " " << r.bound_name << "="
           << format_number(r.bound_value) << " vs simulated " << format_number(r.p_succ_sim);
      }
      ++failures;
    }
  }
  if (failures > 0) {
    throw NumericalError("dominance check failed on " + std::to_string(failures) + " row(s):" + os.str());
  }
}

}  // namespace

void validate_time_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) throw ValidationError("time grid entries must be finite and nonnegative");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("time grid must be strictly increasing");
  }
}

std::vector<double> make_time_grid(double t_min, double t_max, int count, const std::string& scale) {
  if (count < 1) throw ValidationError("time grid is empty (count must be positive)");
  if (!(t_min >= 0.0) || !(t_max >= t_min)) throw ValidationError("time grid needs 0 <= t_min <= t_max");
  if (count > 1 && !(t_max > t_min)) throw ValidationError("time grid with several points needs t_max > t_min");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (scale == "linear") {
    for (int i = 0; i < count; ++i) {
      grid[static_cast<std::size_t>(i)] = count == 1 ? t_min : t_min + (t_max - t_min) * i / (count - 1);
    }
  } else if (scale == "log") {
    if (!(t_min > 0.0)) throw ValidationError("log time grid needs t_min > 0");
    const double a = std::log(t_min), b = std::log(t_max);
    for (int i = 0; i < count; ++i) {
      grid[static_cast<std::size_t>(i)] = count == 1 ? t_min : std::exp(a + (b - a) * i / (count - 1));
    }
    grid.front() = t_min;
    grid.back() = t_max;
  } else {
    throw ValidationError("time scale must be 'linear' or 'log'");
  }
  validate_time_grid(grid);
  return grid;
}

std::vector<Row> run_sweep(const SweepSpec& spec) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), spec.experiment) == names.end()) {
    throw ValidationError("unknown experiment '" + spec.experiment + "'");
  }
  validate_time_grid(spec.time_grid);
  if (spec.dim < 1 || spec.symbols < 1) throw ValidationError("generator dimensions must be positive");
  if (!(spec.e_max > 0.0)) throw ValidationError("e_max must be positive");

  std::optional<InputDocument> doc;
  if (spec.input_path) doc = load_input(*spec.input_path);
  const double hbar = spec.hbar ? *spec.hbar : (doc && doc->hbar ? *doc->hbar : 1.0);
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
  const InputDocument* d = doc ? &*doc : nullptr;

  Context c{spec, hbar, {}};
  Rng rng(spec.seed);
  const std::string& ex = spec.experiment;
  if (ex == "two-state-bounds") {
    two_state_bounds(c, ensemble_source(d, d ? std::vector<EnsembleInstance>{}
                                                   : generated_ensembles(spec, 2, instance_count(spec, 3), rng, true)));
  } else if (ex == "n-state-bounds") {
    n_state_bounds(c, ensemble_source(d, d ? std::vector<EnsembleInstance>{}
                                                 : generated_ensembles(spec, spec.symbols, instance_count(spec, 3), rng,
                                                                       false)));
  } else if (ex == "attainment-curve") {
    std::vector<EnsembleInstance> gen;
    if (!d) {
      gen.push_back(orthogonal_qubits(spec.e_max));
      for (int k = 1; k < instance_count(spec, 1); ++k) {
        const DensityMatrix r0 = random_density_matrix(spec.dim, rng);
        const DensityMatrix r1 = random_density_matrix(spec.dim, rng);
        gen.push_back({"gen" + std::to_string(k), Ensemble({0.5, 0.5}, {r0, r1}), std::nullopt});
      }
    }
    attainment_curve(c, ensemble_source(d, std::move(gen)));
  } else if (ex == "chsh-bounds") {
    chsh_bounds(c, d, rng);
  } else if (ex == "ml-time") {
    std::vector<EnsembleInstance> gen;
    if (!d) {
      gen.push_back(orthogonal_qubits(spec.e_max));
      auto rest = generated_ensembles(spec, 2, instance_count(spec, 3) - 1, rng, true);
      for (auto& r : rest) gen.push_back(std::move(r));
    }
    ml_time(c, ensemble_source(d, std::move(gen)));
  } else {
    truncation(c, ensemble_source(d, d ? std::vector<EnsembleInstance>{}
                                             : generated_ensembles(spec, 2, instance_count(spec, 3), rng, true)));
  }
  assert_dominance(c.rows);
  return std::move(c.rows);
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_csv(const std::vector<Row>& rows) {
  std::string out = "experiment,instance_id,t,p_succ_sim,bound_name,bound_value,gamma_used\n";
  for (const auto& r : rows) {
    out += r.experiment + "," + r.instance_id + "," + format_number(r.t) + "," + format_number(r.p_succ_sim) + "," +
           r.bound_name + "," + format_number(r.bound_value) + "," + format_number(r.gamma_used) + "\n";
  }
  return out;
}

std::string format_report(const SweepSpec& spec, const std::vector<Row>& rows) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::stod(format_number(v)); };
  ordered_json report;
  report["experiment"] = spec.experiment;
  report["seed"] = spec.seed;
  report["capped"] = spec.capped;
  ordered_json grid = ordered_json::array();
  for (double t : spec.time_grid) grid.push_back(num(t));
  report["time_grid"] = grid;
  ordered_json out_rows = ordered_json::array();
  struct Slack {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int n = 0;
  };
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, Slack> slack;
  for (const auto& r : rows) {
    out_rows.push_back({{"instance_id", r.instance_id},
                        {"t", num(r.t)},
                        {"p_succ_sim", num(r.p_succ_sim)},
                        {"bound_name", r.bound_name},
                        {"bound_value", num(r.bound_value)},
                        {"gamma_used", num(r.gamma_used)}});
    if (time_rows().count(r.bound_name)) continue;
    const auto key = std::make_pair(r.instance_id, r.bound_name);
    if (!slack.count(key)) order.push_back(key);
    Slack& s = slack[key];
    const double gap = r.bound_value - r.p_succ_sim;
    s.lo = std::min(s.lo, gap);
    s.hi = std::max(s.hi, gap);
    s.sum += gap;
    ++s.n;
  }
  report["rows"] = out_rows;
  ordered_json summary = ordered_json::array();
  for (const auto& key : order) {
    const Slack& s = slack[key];
    summary.push_back({{"instance_id", key.first},
                       {"bound_name", key.second},
                       {"min_slack", num(s.lo)},
                       {"max_slack", num(s.hi)},
                       {"mean_slack", num(s.sum / s.n)}});
  }
  report["slack"] = summary;
  return report.dump(2) + "\n";
}

}  // namespace qspeed::cli
