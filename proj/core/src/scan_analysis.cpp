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

#include "biparity/scan_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biparity/errors.hpp"

namespace biparity {

namespace {

constexpr double kDegenerateSeparation = 0.1;  // radians
constexpr double kDegenerateGap = 1e-9;

double quadratic_rate(const Mat3& c, const Vec3& n) {
  const Vec3 image = c * n;
  return dot(image, image);
}

// Maximises f on [lo, hi]; returns the abscissa.
template <typename F>
double golden_section_max(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void GridSpec::check() const {
  if (zenith_count < 2 || azimuth_count < 2) {
    throw ValidationError(fmt::format("grid sizes must be >= 2 (got {} x {})",
                                      zenith_count, azimuth_count));
  }
}

double GridSpec::zenith(std::size_t i) const {
  return std::numbers::pi * static_cast<double>(i) / static_cast<double>(zenith_count - 1);
}

double GridSpec::azimuth(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) /
         static_cast<double>(azimuth_count - 1);
}

double GridSpec::zenith_step() const {
  return std::numbers::pi / static_cast<double>(zenith_count - 1);
}

double GridSpec::azimuth_step() const {
  return 2.0 * std::numbers::pi / static_cast<double>(azimuth_count - 1);
}

RateMap rate_map(const TwoQubitState& state, double k, const GridSpec& grid) {
  grid.check();
  const Mat3 c = correlation_matrix(state);
  const Vec3 r_a = reduced_bloch(state, Party::Alice);
  const double alice_mixedness = 1.0 - dot(r_a, r_a);

  RateMap out;
  out.zenith_count = grid.zenith_count;
  out.azimuth_count = grid.azimuth_count;
  out.k = k;
  for (std::size_t i = 0; i < grid.zenith_count; ++i) out.zeniths.push_back(grid.zenith(i));
  for (std::size_t j = 0; j < grid.azimuth_count; ++j) out.azimuths.push_back(grid.azimuth(j));
  out.rate_a.resize(grid.zenith_count * grid.azimuth_count);
  out.rate_b.resize(out.rate_a.size());

  for (std::size_t i = 0; i < grid.zenith_count; ++i) {
    for (std::size_t j = 0; j < grid.azimuth_count; ++j) {
      const Vec3 n = spherical_axis(out.zeniths[i], out.azimuths[j]);
      const double r_nI = dot(n, r_a);
      const std::size_t idx = i * grid.azimuth_count + j;
      out.rate_a[idx] = 4.0 * k * (1.0 - r_nI * r_nI) * alice_mixedness;
      out.rate_b[idx] = 4.0 * k * quadratic_rate(c, n);
    }
  }
  return out;
}

std::vector<Vec3> fibonacci_sphere(std::size_t n) {
  std::vector<Vec3> points;
  points.reserve(n);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    points.emplace_back(radius * std::cos(phi), radius * std::sin(phi), z);
  }
  return points;
}

ArgmaxResult argmax_axis(const TwoQubitState& state, double k, std::size_t grid_points) {
  if (grid_points < 2) throw ValidationError("argmax_axis: grid_points >= 2 violated");
  const Mat3 c = correlation_matrix(state);
  const auto grid = fibonacci_sphere(grid_points);

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double v = quadratic_rate(c, grid[p]);
    if (v > best_value) {
      best_value = v;
      best = p;
    }
  }
  const Vec3 anchor = grid[best];

  ArgmaxResult out;
  out.grid_axis = sign_normalized(anchor);
  out.grid_rate = 4.0 * k * best_value;

  const double cos_sep = std::cos(kDegenerateSeparation);
  double runner_up = -1.0;
  for (const Vec3& p : grid) {
    if (std::abs(dot(p, anchor)) < cos_sep) runner_up = std::max(runner_up, quadratic_rate(c, p));
  }
  out.degenerate = runner_up >= 0.0 && 4.0 * k * (best_value - runner_up) < kDegenerateGap;

  // Powell's direction-set method in gnomonic coordinates around the anchor.
  const PlaneBasis tangent = orthonormal_complement(anchor);
  auto lift = [&](double u, double v) {
    const Vec3 p = anchor + tangent.p1 * u + tangent.p2 * v;
    return p * (1.0 / norm(p));
  };
  auto objective = [&](double u, double v) { return quadratic_rate(c, lift(u, v)); };

  const double bracket =
      3.0 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(grid_points));
  std::array<double, 2> x{0.0, 0.0};
  std::array<std::array<double, 2>, 2> dirs{{{1.0, 0.0}, {0.0, 1.0}}};
  double fx = objective(0.0, 0.0);

  auto line_search = [&](const std::array<double, 2>& d) {
    const double s = golden_section_max(
        [&](double t) { return objective(x[0] + t * d[0], x[1] + t * d[1]); }, -bracket,
        bracket);
    const double candidate = objective(x[0] + s * d[0], x[1] + s * d[1]);
    if (candidate >= fx) {
      x = {x[0] + s * d[0], x[1] + s * d[1]};
      fx = candidate;
    }
  };

  for (int iter = 0; iter < 100; ++iter) {
    const auto start = x;
    const double f_start = fx;
    for (const auto& d : dirs) line_search(d);
    std::array<double, 2> shift{x[0] - start[0], x[1] - start[1]};
    const double len = std::hypot(shift[0], shift[1]);
    if (len < 1e-15) break;
    shift = {shift[0] / len, shift[1] / len};
    line_search(shift);
    dirs = {dirs[1], shift};
    if (fx - f_start <= 1e-17 * std::max(fx, 1e-300) && len < 1e-12) break;
  }

  out.axis = sign_normalized(lift(x[0], x[1]));
  out.rate = 4.0 * k * quadratic_rate(c, out.axis);

  const Svd3 svd = svd3(c);
  out.svd_axis = svd.v[0];
  out.svd_rate = 4.0 * k * svd.sigma[0] * svd.sigma[0];
  out.axis_discrepancy =
      std::atan2(norm(cross(out.axis, out.svd_axis)), std::abs(dot(out.axis, out.svd_axis)));
  return out;
}

ProjectiveMap projective_map(const TwoQubitState& state, double k, const GridSpec& grid) {
  grid.check();
  const Mat3 c = correlation_matrix(state);
  ProjectiveMap out;
  out.zenith_count = grid.zenith_count;
  out.azimuth_count = grid.azimuth_count;
  out.k = k;
  for (std::size_t i = 0; i < grid.zenith_count; ++i) out.zeniths.push_back(grid.zenith(i));
  for (std::size_t j = 0; j < grid.azimuth_count; ++j) out.azimuths.push_back(grid.azimuth(j));
  out.expected_bob_purity.resize(grid.zenith_count * grid.azimuth_count);
  out.rate_b.resize(out.expected_bob_purity.size());
  for (std::size_t i = 0; i < grid.zenith_count; ++i) {
    for (std::size_t j = 0; j < grid.azimuth_count; ++j) {
      const Vec3 n = spherical_axis(out.zeniths[i], out.azimuths[j]);
      const std::size_t idx = i * grid.azimuth_count + j;
      out.expected_bob_purity[idx] = projective_measure(state, n).expected_bob_purity;
      out.rate_b[idx] = 4.0 * k * quadratic_rate(c, n);
    }
  }
  return out;
}

GridArgmax grid_argmax(const std::vector<double>& values, const std::vector<double>& zeniths,
                       const std::vector<double>& azimuths) {
  if (values.empty() || values.size() != zeniths.size() * azimuths.size()) {
    throw ValidationError("grid_argmax: value count does not match grid");
  }
  // Ties within rounding resolve to the first cell in row-major order.
  const double top = *std::max_element(values.begin(), values.end());
  const double floor = top - 1e-12 * std::max(1.0, std::abs(top));
  const auto it = std::find_if(values.begin(), values.end(), [&](double v) { return v >= floor; });
  const auto idx = static_cast<std::size_t>(it - values.begin());
  GridArgmax out;
  out.zenith_index = idx / azimuths.size();
  out.azimuth_index = idx % azimuths.size();
  out.zenith = zeniths[out.zenith_index];
  out.azimuth = azimuths[out.azimuth_index];
  out.value = *it;
  return out;
}

}  // namespace biparity
