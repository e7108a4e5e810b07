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

#pragma once

// Option bundles shared between the argument parser and the command bodies.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biparity/pauli_state.hpp"
#include "biparity/scan_analysis.hpp"

namespace biparity::cli {

struct StateOptions {
  std::string preset;
  std::string file;
  double beta = 0.0;
  double delta = 0.0;
  std::vector<double> alice_bloch{0.0, 0.0, 0.0};
  std::vector<double> bob_bloch{0.0, 0.0, 0.0};
};

struct Options {
  StateOptions state;
  double k = 0.1;
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t n_traj = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::vector<std::string> strategies;
  std::string policy = "nested";
  std::string noise = "two_point";
  bool allow_large_step = false;
  std::size_t workers = 0;
  std::optional<double> target_pb;
  std::string svg;
  std::string trajectory_out;
  std::size_t zenith_count = 181;
  std::size_t azimuth_count = 361;
  std::size_t grid_points = 100000;
};

struct LoadedState {
  TwoQubitState state;
  std::string label;
};

/// Side-by-side argmax of projective expected Bob purity and weak rate_b.
struct ProjectSummary {
  GridArgmax projective;
  Vec3 projective_axis;
  GridArgmax weak;
  Vec3 weak_axis;
  double bob_prior_purity = 0.0;
};

ProjectSummary summarize_projection(const TwoQubitState& state, double k, const GridSpec& grid,
                                    ProjectiveMap* map_out = nullptr);

/// Builds the state from --preset or --file and checks it is physical.
LoadedState load_state(const StateOptions& options);

int cmd_state(const Options& options, std::ostream& out);
int cmd_scan(const Options& options, std::ostream& out);
int cmd_simulate(const Options& options, std::ostream& out);
int cmd_compare(const Options& options, std::ostream& out);
int cmd_project(const Options& options, std::ostream& out);

}  // namespace biparity::cli
