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
#include <cstdint>
#include <vector>

#include "biparity/control_strategies.hpp"
#include "biparity/linalg3.hpp"
#include "biparity/noise.hpp"
#include "biparity/pauli_state.hpp"

namespace biparity {

/// Upper bound on k*dt accepted without allow_large_step.
inline constexpr double kMaxStrengthStep = 0.025;

struct SimParams {
  double k = 0.1;        ///< measurement strength, 1/time
  double dt = 1e-3;      ///< integration step
  double t_final = 1.0;
  std::uint64_t seed = 1;
  NoiseKind noise = NoiseKind::TwoPoint;
  bool allow_large_step = false;
  /// Recorded states failing is_physical(state, pos_tol) flag the trajectory.
  double pos_tol = 1e-6;

  /// ceil(t_final / dt), robust to t_final being a rounded multiple of dt.
  std::size_t step_count() const;
  /// Throws ValidationError for non-positive k/dt or negative t_final and
  /// NumericalGuardError when k*dt > kMaxStrengthStep without override.
  void check() const;
};

/// One Euler-Maruyama step of the coefficient SME for a measurement of
/// n.sigma (x) I on Alice's qubit. Alice's rows are rotated into the frame
/// (n, m1, m2) and updated as
///   dr_mj = -(4k dt + r_nI sqrt(8k) dW) r_mj
///   dr_nj = (r_Ij - r_nI r_nj) sqrt(8k) dW
///   dr_Ij = (r_nj - r_nI r_Ij) sqrt(8k) dW
/// for j in {I, X, Y, Z}. r_II is left exactly at 1.
TwoQubitState step_pauli(const TwoQubitState& state, const Vec3& axis, double k,
                         double dt, double dW);

/// Euler-Maruyama step of the dense SME
///   drho = -k[y,[y,rho]] dt + sqrt(2k)(y rho + rho y - 2<y> rho) dW,
/// y = n.sigma (x) I, followed by (rho + rho^dagger)/2.
DensityMatrix step_dense(const DensityMatrix& rho, const Vec3& axis, double k,
                         double dt, double dW);

struct TrajectoryRecord {
  /// Row 0 is the initial state (axis zero, dW zero); row s > 0 is the state
  /// after step s together with the axis and increment that produced it.
  std::vector<double> times;
  std::vector<TwoQubitState> states;
  std::vector<Vec3> axes;
  std::vector<double> noises;
  std::vector<double> purities_a;
  std::vector<double> purities_b;
  bool positivity_flagged = false;
  std::size_t first_flagged_step = 0;

  std::size_t size() const { return times.size(); }
};

struct FeedbackStep {
  TwoQubitState state;
  Vec3 axis;
  double dW = 0.0;
};

/// Chooses the axis from the current state, draws dW for `step_index` and
/// applies step_pauli. Degeneracy errors are rethrown with the step index.
FeedbackStep feedback_step(const TwoQubitState& state, const Controller& controller,
                           const SimParams& params, const NoiseStream& noise,
                           std::uint64_t step_index);

/// Integrates one conditioned trajectory for params.step_count() steps.
TrajectoryRecord simulate_trajectory(const TwoQubitState& initial,
                                     const Controller& controller,
                                     const SimParams& params, const NoiseStream& noise);

}  // namespace biparity
