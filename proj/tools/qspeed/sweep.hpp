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

// Bound sweeps over a time grid.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspeed/hermitian.hpp"

namespace qspeed::cli {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"two-state-bounds", "n-state-bounds", "attainment-curve",
                                              "chsh-bounds",      "ml-time",        "truncation"};
  return names;
}

struct SweepSpec {
  std::string experiment;
  std::vector<double> time_grid;
  std::optional<double> hbar;  // falls back to the input file, then 1
  std::uint64_t seed = 0;
  std::optional<std::string> input_path;
  // Generator parameters, used when no input file is given.
  int instances = 0;  // 0 picks the experiment default
  Index dim = 2;
  Index symbols = 3;
  double e_max = 1.0;
  std::vector<double> epsilons{0.05};
  bool capped = false;
};

struct Row {
  std::string experiment;
  std::string instance_id;
  double t;
  double p_succ_sim;
  std::string bound_name;
  double bound_value;
  double gamma_used;  // 0 for rows that involve no gamma constant
};

inline constexpr double kDominanceTolerance = 1e-9;

/// Checks the grid is nonempty, nonnegative and strictly increasing.
void validate_time_grid(const std::vector<double>& grid);

/// count points on [t_min, t_max]; scale is "linear" or "log" (log needs t_min > 0).
std::vector<double> make_time_grid(double t_min, double t_max, int count, const std::string& scale);

/// Rows in (instance, t, bound) order. Throws NumericalError if any row has
/// bound < p_succ_sim - 1e-9.
std::vector<Row> run_sweep(const SweepSpec& spec);

std::string format_number(double v);
std::string format_csv(const std::vector<Row>& rows);
/// JSON report with the same rows plus per (instance, bound) slack statistics.
std::string format_report(const SweepSpec& spec, const std::vector<Row>& rows);

}  // namespace qspeed::cli
