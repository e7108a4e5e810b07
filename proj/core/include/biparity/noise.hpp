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

#include <array>
#include <cstdint>
#include <string_view>

namespace biparity {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123
/// constants). Stateless: the output is a pure function of counter and key,
/// so any step of any trajectory can be regenerated independently.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-trajectory key: splitmix64(master_seed + 0x9E3779B97F4A7C15 * (index + 1)).
/// Distinct indices give distinct keys.
std::uint64_t trajectory_key(std::uint64_t master_seed, std::uint64_t index);

enum class NoiseKind {
  /// dW = +/- sqrt(dt) with equal probability (simplified weak Euler). Keeps
  /// dW^2 = dt exactly, which preserves purity determinism per step.
  TwoPoint,
  /// dW = sqrt(dt) * N(0, 1) via Box-Muller (cosine branch).
  Gaussian,
};

std::string_view to_string(NoiseKind kind);
/// Accepts "two_point" or "gaussian"; throws ValidationError otherwise.
NoiseKind parse_noise_kind(std::string_view text);

/// Wiener increments for one trajectory. increment(step) depends only on
/// (key, step, kind, dt).
class NoiseStream {
 public:
  NoiseStream(std::uint64_t key, double dt, NoiseKind kind = NoiseKind::TwoPoint);

  double increment(std::uint64_t step) const;
  /// Standard normal (Gaussian kind) or +/-1 (two-point kind) before scaling.
  double unit_draw(std::uint64_t step) const;

  std::uint64_t key() const { return key_; }
  NoiseKind kind() const { return kind_; }
  double dt() const { return dt_; }

 private:
  std::uint64_t key_;
  double dt_;
  double sqrt_dt_;
  NoiseKind kind_;
};

}  // namespace biparity
