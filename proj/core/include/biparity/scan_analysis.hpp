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
#include <vector>

#include "biparity/linalg3.hpp"
#include "biparity/pauli_state.hpp"

namespace biparity {

/// Zenith phi in [0, pi] (from +z) and azimuth theta in [0, 2 pi] (from +x),
/// both sampled with their endpoints, so 181 x 361 is a 1 degree grid.
struct GridSpec {
  std::size_t zenith_count = 181;
  std::size_t azimuth_count = 361;

  /// Throws ValidationError unless both counts are >= 2.
  void check() const;
  double zenith(std::size_t i) const;
  double azimuth(std::size_t j) const;
  double zenith_step() const;
  double azimuth_step() const;
};

/// Purification rates (drift terms) over all measurement-axis orientations.
/// rate_* are row-major with the zenith index varying slowest.
struct RateMap {
  std::size_t zenith_count = 0;
  std::size_t azimuth_count = 0;
  std::vector<double> zeniths;
  std::vector<double> azimuths;
  std::vector<double> rate_a;
  std::vector<double> rate_b;
  double k = 0.0;

  double a(std::size_t i, std::size_t j) const { return rate_a[i * azimuth_count + j]; }
  double b(std::size_t i, std::size_t j) const { return rate_b[i * azimuth_count + j]; }
};

RateMap rate_map(const TwoQubitState& state, double k, const GridSpec& grid = {});

/// n points spread evenly over the unit sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(std::size_t n);

struct ArgmaxResult {
  Vec3 axis;             ///< refined maximiser of 4k|C n|^2, sign-normalized
  double rate = 0.0;     ///< refined maximum
  double grid_rate = 0.0;
  Vec3 grid_axis;
  bool degenerate = false;
  Vec3 svd_axis;         ///< v1 of svd3(C)
  double svd_rate = 0.0; ///< 4k sigma_1^2
  /// Angle between axis and svd_axis modulo sign, radians.
  double axis_discrepancy = 0.0;
};

/// Grid search over a Fibonacci sphere followed by Powell refinement with
/// golden-section line searches in the tangent plane of the best grid
/// point. `degenerate` is set when some grid point farther than 0.1 rad from
/// the maximiser (and its antipode) comes within 1e-9 of the maximum.
ArgmaxResult argmax_axis(const TwoQubitState& state, double k,
                         std::size_t grid_points = 100000);

/// Projective-measurement expected Bob purity next to the weak-measurement
/// rate 4k|C n|^2 on the same grid.
struct ProjectiveMap {
  std::size_t zenith_count = 0;
  std::size_t azimuth_count = 0;
  std::vector<double> zeniths;
  std::vector<double> azimuths;
  std::vector<double> expected_bob_purity;
  std::vector<double> rate_b;
  double k = 0.0;
};

ProjectiveMap projective_map(const TwoQubitState& state, double k, const GridSpec& grid = {});

struct GridArgmax {
  std::size_t zenith_index = 0;
  std::size_t azimuth_index = 0;
  double zenith = 0.0;
  double azimuth = 0.0;
  double value = 0.0;
};

/// First cell in row-major order within a relative 1e-12 of the maximum.
GridArgmax grid_argmax(const std::vector<double>& values, const std::vector<double>& zeniths,
                       const std::vector<double>& azimuths);

}  // namespace biparity
