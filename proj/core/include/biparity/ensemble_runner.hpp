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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "biparity/control_strategies.hpp"
#include "biparity/pauli_state.hpp"
#include "biparity/sme_engine.hpp"

namespace biparity {

struct EnsembleConfig {
  TwoQubitState initial;
  StrategyConfig strategy;
  SimParams params;
  std::size_t n_traj = 100;
  bool record_trajectories = false;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t worker_count = 0;
  /// When set, per-trajectory first times with P_B >= target are collected.
  std::optional<double> target_pb;
};

/// Per-time-step statistics over trajectories. Variances are unbiased
/// sample variances (zero for a single trajectory); quantiles use linear
/// interpolation between order statistics.
struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean_pa, var_pa, min_pa, max_pa, q05_pa, q50_pa, q95_pa;
  std::vector<double> mean_pb, var_pb, min_pb, max_pb, q05_pb, q50_pb, q95_pb;
  std::size_t n_traj = 0;
  std::size_t flagged_positivity_count = 0;
  /// First time P_B >= target per trajectory; +infinity when never reached.
  std::vector<double> time_to_target_pb;

  std::size_t size() const { return times.size(); }
};

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<TrajectoryRecord> records;  ///< filled when record_trajectories
};

/// Runs n_traj independent trajectories; trajectory i uses the noise key
/// trajectory_key(params.seed, i). Output is bit-identical for any
/// worker_count.
EnsembleResult run_ensemble(const EnsembleConfig& config);

struct DeterminismReport {
  std::vector<double> times;
  std::vector<double> spread_a;  ///< max_i |P_A,i(t) - mean P_A(t)|
  std::vector<double> spread_b;
  double tol_det = 0.0;  ///< 10 * dt
  double max_spread_a = 0.0;
  double max_spread_b = 0.0;
  bool deterministic_a = true;
  bool deterministic_b = true;
};

/// Spread of each party's purity across trajectories, from stored records.
DeterminismReport determinism_report(std::span<const TrajectoryRecord> records, double dt);

/// Same spread measure from streaming min/max/mean statistics.
DeterminismReport determinism_report(const EnsembleStats& stats, double dt);

/// Quantile with linear interpolation (R type 7); reorders `values`.
double quantile(std::vector<double>& values, double q);

/// Median of time_to_target_pb; nullopt when at most half the trajectories
/// reached the target.
std::optional<double> median_time_to_target(const EnsembleStats& stats);

}  // namespace biparity
