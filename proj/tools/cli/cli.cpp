// Copyright 2026 The Biparity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biparity/errors.hpp"
#include "cli/commands.hpp"

namespace biparity::cli {

namespace {

// Reads a flat key = value file and scopes every unqualified key to the
// subcommand being run, so one file layout serves all commands.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(const CLI::App* app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigINI::from_config(input);
    const auto selected = app_->get_subcommands();
    for (CLI::ConfigItem& item : items) {
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      if (item.parents.empty() && !selected.empty()) item.parents = {selected.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App* app_;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
  cmd->add_option("--preset", s.preset,
                  "bell | dephased | jacobs_counterexample | product | maximally_mixed");
  cmd->add_option("--file", s.file, "JSON state file {\"r\": 4x4}")->check(CLI::ExistingFile);
  cmd->add_option("--beta", s.beta, "preset parameter beta in [-1, 1]");
  cmd->add_option("--delta", s.delta, "dephasing delta in [0, sqrt(1 - beta^2)]");
  cmd->add_option("--ra", s.alice_bloch, "Alice Bloch vector for the product preset")->expected(3);
  cmd->add_option("--rb", s.bob_bloch, "Bob Bloch vector for the product preset")->expected(3);
}

void add_strength(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.k, "measurement strength (1/time)")->capture_default_str();
}

void add_grid_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--zenith-count", o.zenith_count, "grid rows over phi in [0, pi]")->capture_default_str();
  cmd->add_option("--azimuth-count", o.azimuth_count, "grid columns over theta in [0, 2 pi]")
      ->capture_default_str();
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--dt", o.dt, "integration step")->capture_default_str();
  cmd->add_option("--t-final", o.t_final, "simulated time")->capture_default_str();
  cmd->add_option("--n-traj", o.n_traj, "number of trajectories")->capture_default_str();
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--policy", o.policy, "degeneracy policy: error | canonical | nested")
      ->capture_default_str();
  cmd->add_option("--noise", o.noise, "increment law: two_point | gaussian")->capture_default_str();
  cmd->add_flag("--allow-large-step", o.allow_large_step, "accept k*dt above the Euler bound");
  cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)")->envname("BIPARITY_WORKERS");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weak-measurement purification of two-qubit states", "biparity"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence")
      ->check(CLI::ExistingFile);
  app.config_formatter(std::make_shared<FlatConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  CLI::App* state = app.add_subcommand("state", "inspect a state: coefficients, purities, C, SVD");
  add_state_options(state, o.state);
  add_strength(state, o);
  state->add_option("--out", o.out, "write the state as JSON");

  CLI::App* scan = app.add_subcommand("scan", "purification-rate maps over all measurement axes");
  add_state_options(scan, o.state);
  add_strength(scan, o);
  add_grid_options(scan, o);
  scan->add_option("--grid-points", o.grid_points, "Fibonacci points for the argmax search")
      ->capture_default_str();
  scan->add_option("--out", o.out, "rate-map output file");
  scan->add_option("--format", o.format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  scan->add_option("--svg", o.svg, "also write an SVG heatmap of rate_b");

  CLI::App* simulate = app.add_subcommand("simulate", "run a trajectory ensemble for one strategy");
  add_state_options(simulate, o.state);
  add_strength(simulate, o);
  add_run_options(simulate, o);
  simulate->add_option("--strategy", o.strategies,
                       "fixed:x,y,z | fixed:<phi>deg,<theta>deg | along_bloch | jacobs | bob_opt | "
                       "bob_det | simultaneous");
  simulate->add_option("--target-pb", o.target_pb, "collect first-passage times to this P_B");
  simulate->add_option("--out", o.out, "statistics output file");
  simulate->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--trajectory-out", o.trajectory_out, "CSV of trajectory 0");

  CLI::App* compare = app.add_subcommand("compare", "run several strategies on shared noise");
  add_state_options(compare, o.state);
  add_strength(compare, o);
  add_run_options(compare, o);
  compare->add_option("--strategy", o.strategies, "strategy name, repeat for each one")->required();
  compare->add_option("--target-pb", o.target_pb, "target Bob purity (default 0.9)");
  compare->add_option("--out", o.out, "output prefix (csv) or file (json)");
  compare->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* project = app.add_subcommand("project", "projective versus weak measurement on Alice");
  add_state_options(project, o.state);
  add_strength(project, o);
  add_grid_options(project, o);
  project->add_option("--out", o.out, "CSV of expected Bob purity and rate_b per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (state->parsed()) return cmd_state(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (project->parsed()) return cmd_project(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const DegenerateInputError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const NumericalGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kValidationError;
}

}  // namespace biparity::cli
