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

#include <optional>
#include <string>
#include <string_view>

#include "biparity/linalg3.hpp"
#include "biparity/pauli_state.hpp"

namespace biparity {

enum class StrategyKind {
  Fixed,
  AlongBloch,
  JacobsAlice,
  BobOptimal,
  BobDeterministic,
  SimultaneousDet,
};

/// What a selection rule does when its geometry degenerates (zero Bloch
/// vector, zero correlation matrix).
enum class DegeneracyPolicy {
  Error,              ///< throw DegenerateInputError
  FallbackCanonical,  ///< measure along z
  FallbackNested,     ///< delegate to the next rule in the chain
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::JacobsAlice;
  std::optional<Vec3> fixed_axis;
  DegeneracyPolicy degeneracy_policy = DegeneracyPolicy::FallbackNested;
};

/// Parses fixed:<x>,<y>,<z> | fixed:<zenith>deg,<azimuth>deg | along_bloch |
/// jacobs | bob_opt | bob_det | simultaneous. Fixed axes are normalized.
StrategyConfig parse_strategy(std::string_view text,
                              DegeneracyPolicy policy = DegeneracyPolicy::FallbackNested);
std::string to_string(const StrategyConfig& config);

DegeneracyPolicy parse_degeneracy_policy(std::string_view text);
std::string_view to_string(DegeneracyPolicy policy);

/// Throws ValidationError unless fixed_axis is present exactly for Fixed and
/// has unit norm.
void check(const StrategyConfig& config);

/// Drift (dt coefficient) and noise (dW coefficient) of a purity increment.
struct RateTerms {
  double drift = 0.0;
  double noise = 0.0;
};

/// dP_A = 4k(1 - r_nI^2)(1 - |r_A|^2) dt + r_nI (1 - |r_A|^2) sqrt(8k) dW.
RateTerms rate_alice(const TwoQubitState& state, const Vec3& axis, double k);

/// dP_B = 4k |C n|^2 dt + (r_B . C n) sqrt(8k) dW.
RateTerms rate_bob(const TwoQubitState& state, const Vec3& axis, double k);

/// Bob's noise direction r_B' = C^T r_B; the axis keeps P_B noise-free iff
/// it is orthogonal to this vector.
Vec3 bob_noise_direction(const TwoQubitState& state);

struct AxisChoice {
  Vec3 axis;
  bool fallback = false;   ///< a degeneracy fallback produced the axis
  bool zero_rate = false;  ///< the constrained rule cannot purify Bob at all
};

/// v1 of svd3(C): the axis maximizing 4k|C n|^2.
AxisChoice select_axis_bob_optimal(const TwoQubitState& state,
                                   DegeneracyPolicy policy = DegeneracyPolicy::FallbackNested);

/// Axis orthogonal to r_A (Alice's purity drift is maximal and noise-free),
/// chosen within that plane to maximize Bob's rate.
AxisChoice select_axis_jacobs_alice(const TwoQubitState& state,
                                    DegeneracyPolicy policy = DegeneracyPolicy::FallbackNested);

/// r_A / |r_A|.
AxisChoice select_axis_along_bloch(const TwoQubitState& state,
                                   DegeneracyPolicy policy = DegeneracyPolicy::FallbackNested);

/// v1 of svd3(C P_p) with P_p projecting onto the plane orthogonal to r_B'.
AxisChoice select_axis_bob_deterministic(const TwoQubitState& state,
                                         DegeneracyPolicy policy = DegeneracyPolicy::FallbackNested);

/// Normalized r_A x r_B', so both purities evolve without noise. Total.
AxisChoice select_axis_simultaneous(const TwoQubitState& state);

/// Axis in the plane orthogonal to `normal` maximizing |C n|^2; zero_rate is
/// set (and p1 of the plane returned) when C vanishes on the plane.
AxisChoice best_axis_in_plane(const Mat3& c, const Vec3& normal);

/// Feedback rule: maps the current conditioned state to a measurement axis.
class Controller {
 public:
  explicit Controller(StrategyConfig config);

  AxisChoice choose(const TwoQubitState& state) const;
  const StrategyConfig& config() const { return config_; }

 private:
  StrategyConfig config_;
};

}  // namespace biparity
