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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "biparity/ensemble_runner.hpp"
#include "biparity/pauli_state.hpp"
#include "biparity/scan_analysis.hpp"
#include "biparity/sme_engine.hpp"

namespace biparity::io {

inline constexpr int kSchemaVersion = 1;

/// {"r": [[r_II, r_IX, r_IY, r_IZ], [r_XI, ...], ...]}: row = Alice Pauli,
/// column = Bob Pauli, order I, X, Y, Z.
std::string state_to_json(const TwoQubitState& state);
/// Throws ValidationError for malformed documents. Does not validate physics.
TwoQubitState state_from_json(const std::string& text);

TwoQubitState load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const TwoQubitState& state);

/// Columns: t, r_II..r_ZZ (Alice index slowest), n_x, n_y, n_z, dW, P_A, P_B.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);

/// Columns: t, mean_pa, var_pa, q05_pa, q50_pa, q95_pa, mean_pb, var_pb,
/// q05_pb, q50_pb, q95_pb.
void write_stats_csv(std::ostream& out, const EnsembleStats& stats);

/// JSON document with schema_version, the effective config, metadata
/// (positivity flags, determinism report, time to target) and the stats.
std::string ensemble_json(const EnsembleConfig& config, const EnsembleStats& stats,
                          const DeterminismReport& report);

/// Columns: phi_rad, theta_rad, rate_a, rate_b (phi slowest).
void write_rate_map_csv(std::ostream& out, const RateMap& map);

/// Equirectangular heatmap of rate_b; linear colour scale, min/max in the
/// embedded metadata text. Byte-stable for fixed input.
void write_rate_map_svg(std::ostream& out, const RateMap& map);

/// Columns: phi_rad, theta_rad, expected_bob_purity, rate_b.
void write_projective_csv(std::ostream& out, const ProjectiveMap& map);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace biparity::io
