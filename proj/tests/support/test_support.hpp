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

// Helpers shared by the test binaries: random physical states and a
// brute-force sphere search used as an oracle independent of svd3 and of
// scan_analysis.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "biparity/linalg3.hpp"
#include "biparity/pauli_state.hpp"

namespace biparity::testing {

/// Random density matrix rho = G G^dagger / Tr, G a 4 x rank complex Gaussian
/// matrix; rank 1 gives pure states.
inline TwoQubitState random_state(std::mt19937_64& rng, int rank = 0) {
  std::normal_distribution<double> normal;
  if (rank <= 0) rank = 1 + static_cast<int>(rng() % 4);
  std::array<std::array<Complex, 4>, 4> g{};
  for (auto& row : g)
    for (int c = 0; c < rank; ++c) row[static_cast<std::size_t>(c)] = {normal(rng), normal(rng)};
  DensityMatrix rho{};
  double trace = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      Complex s = 0.0;
      for (std::size_t c = 0; c < 4; ++c) s += g[a][c] * std::conj(g[b][c]);
      rho[a][b] = s;
      if (a == b) trace += s.real();
    }
  for (auto& row : rho)
    for (auto& x : row) x /= trace;
  return from_density_matrix(rho);
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec3 v{normal(rng), normal(rng), normal(rng)};
  return v * (1.0 / norm(v));
}

inline Mat3 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = normal(rng);
  return m;
}

/// max over an n-point golden-spiral grid of |M n|.
inline double brute_force_max_gain(const Mat3& m, std::size_t n, Vec3* argmax = nullptr) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rad = std::sqrt(1.0 - z * z);
    const Vec3 p{rad * std::cos(golden * static_cast<double>(i)),
                 rad * std::sin(golden * static_cast<double>(i)), z};
    const Vec3 img = m * p;
    const double v = norm(img);
    if (v > best) {
      best = v;
      if (argmax) *argmax = p;
    }
  }
  return best;
}

/// Angle between two axes modulo sign.
inline double axis_angle(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), std::abs(dot(a, b)));
}

}  // namespace biparity::testing
