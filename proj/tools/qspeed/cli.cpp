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

#include "cli.hpp"

#include <fstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "qspeed/errors.hpp"
#include "sweep.hpp"

namespace qspeed::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError(path + ": cannot open for writing");
  f << text;
  if (!f) throw ValidationError(path + ": write failed");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-limited quantum state discrimination: simulations and bounds", "qspeed"};
  app.require_subcommand(1);

  SweepSpec spec;
  double t_min = 0.0, t_max = 5.0;
  int t_count = 21;
  std::string t_scale = "linear";
  std::vector<double> times;
  std::string input, output, report;
  double hbar = 1.0;

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate simulated success and bounds over a time grid");
  sweep->add_option("--experiment", spec.experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  sweep->add_option("--input", input, "JSON input document (generated instances when absent)");
  sweep->add_option("--t-min", t_min, "Smallest time of the grid");
  sweep->add_option("--t-max", t_max, "Largest time of the grid");
  sweep->add_option("--t-count", t_count, "Number of grid points");
  sweep->add_option("--t-scale", t_scale, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
  auto* times_opt = sweep->add_option("--times", times, "Explicit comma-separated time grid")->delimiter(',');
  auto* hbar_opt = sweep->add_option("--hbar", hbar, "Reduced Planck constant (default 1)");
  sweep->add_option("--seed", spec.seed, "Seed for generated instances");
  sweep->add_option("--output", output, "CSV output path (stdout when absent)");
  sweep->add_option("--report", report, "Optional JSON report path");
  sweep->add_flag("--capped", spec.capped, "Show probability bounds capped at 1");
  sweep->add_option("--instances", spec.instances, "Number of generated instances")->check(CLI::PositiveNumber);
  sweep->add_option("--dim", spec.dim, "Encoding dimension of generated instances")->check(CLI::PositiveNumber);
  sweep->add_option("--symbols", spec.symbols, "Ensemble size for n-state-bounds")->check(CLI::PositiveNumber);
  sweep->add_option("--e-max", spec.e_max, "Largest energy of generated Hamiltonians");
  sweep->add_option("--epsilon", spec.epsilons, "Truncation errors, comma separated")->delimiter(',');

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "List every violated invariant in an input document");
  validate->add_option("path", validate_path, "JSON input document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) {
      const auto issues = validate_document(validate_path);
      for (const auto& line : issues) out << line << "\n";
      return issues.empty() ? kExitOk : kExitValidation;
    }

    if (!input.empty()) spec.input_path = input;
    if (hbar_opt->count() > 0) spec.hbar = hbar;
    if (times_opt->count() > 0) {
      spec.time_grid = times;
      validate_time_grid(spec.time_grid);
    } else {
      spec.time_grid = make_time_grid(t_min, t_max, t_count, t_scale);
    }
    const std::vector<Row> rows = run_sweep(spec);
    const std::string csv = format_csv(rows);
    if (output.empty()) {
      out << csv;
    } else {
      write_file(output, csv);
    }
    if (!report.empty()) write_file(report, format_report(spec, rows));
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "qspeed: validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "qspeed: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const UnreachableError& e) {
    err << "qspeed: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "qspeed: error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace qspeed::cli
