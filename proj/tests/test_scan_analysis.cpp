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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "biparity/errors.hpp"
#include "biparity/pauli_state.hpp"
#include "biparity/scan_analysis.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace biparity;
using doctest::Approx;

namespace {

constexpr double kK = 0.1;
constexpr double kPi = std::numbers::pi;

double map_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("grid convention") {
  const GridSpec g;
  CHECK(g.zenith(0) == 0.0);
  CHECK(g.zenith(180) == Approx(kPi));
  CHECK(g.zenith(90) == Approx(kPi / 2));
  CHECK(g.azimuth(0) == 0.0);
  CHECK(g.azimuth(360) == Approx(2 * kPi));
  CHECK(g.zenith_step() == Approx(kPi / 180));
  CHECK_THROWS_AS((GridSpec{1, 10}.check()), ValidationError);
  CHECK_THROWS_AS((GridSpec{10, 1}.check()), ValidationError);
}

TEST_CASE("rate map of the dephased state peaks in the xy-plane") {
  const RateMap m = rate_map(presets::dephased(0.5, 0.01), kK);
  REQUIRE(m.rate_b.size() == 181 * 361);
  const GridArgmax a = grid_argmax(m.rate_b, m.zeniths, m.azimuths);
  CHECK(a.zenith_index == 90);
  CHECK(a.value == Approx(0.2931117967697244).epsilon(1e-12));
  for (std::size_t j = 0; j < m.azimuth_count; ++j) CHECK(m.b(90, j) == Approx(0.2931117967697244).epsilon(1e-12));
  CHECK(m.b(0, 0) == Approx(4 * kK * 0.5625).epsilon(1e-12));
}

TEST_CASE("rate map of the counterexample state") {
  const RateMap m = rate_map(presets::jacobs_counterexample(), kK);
  CHECK(map_max(m.rate_b) == Approx(0.16).epsilon(1e-12));
  CHECK(m.b(45, 0) == Approx(0.16).epsilon(1e-12));
  CHECK(m.b(135, 180) == Approx(0.16).epsilon(1e-12));
  CHECK(std::abs(m.b(90, 90)) < 1e-15);
  CHECK(std::abs(m.b(90, 270)) < 1e-15);
}

TEST_CASE("rate map of a product state is zero for Bob") {
  const RateMap m = rate_map(presets::product(Vec3(0.2, 0.0, 0.5), Vec3(0.0, 0.7, 0.0)), kK);
  CHECK(map_max(m.rate_b) == 0.0);
  CHECK(map_max(m.rate_a) > 0.0);
}

TEST_CASE("rate maps: nonnegative, antipodally symmetric, bounded by the singular value") {
  std::mt19937_64 rng(51);
  const GridSpec g{61, 121};
  for (int s = 0; s < 30; ++s) {
    const TwoQubitState state = testing::random_state(rng);
    const RateMap m = rate_map(state, kK, g);
    const double sigma = svd3(correlation_matrix(state)).sigma[0];
    CHECK(map_max(m.rate_b) <= 4 * kK * sigma * sigma + 1e-12);
    for (std::size_t i = 0; i < g.zenith_count; ++i)
      for (std::size_t j = 0; j < g.azimuth_count; ++j) {
        CHECK(m.a(i, j) >= 0.0);
        CHECK(m.b(i, j) >= 0.0);
        const std::size_t ia = g.zenith_count - 1 - i;
        const std::size_t ja = (j + (g.azimuth_count - 1) / 2) % (g.azimuth_count - 1);
        CHECK(std::abs(m.a(i, j) - m.a(ia, ja)) < 1e-12);
        CHECK(std::abs(m.b(i, j) - m.b(ia, ja)) < 1e-12);
      }
  }
}

TEST_CASE("fibonacci sphere points are unit vectors spread over the sphere") {
  const auto pts = fibonacci_sphere(1000);
  REQUIRE(pts.size() == 1000);
  Vec3 centroid;
  for (const Vec3& p : pts) {
    CHECK(norm(p) == Approx(1.0).epsilon(1e-14));
    centroid += p;
  }
  CHECK(norm(centroid) / 1000.0 < 1e-2);
}

TEST_CASE("argmax_axis examples") {
  const ArgmaxResult t = argmax_axis(presets::jacobs_counterexample(), kK);
  const Vec3 expected = Vec3(1.0, 0.0, 1.0) * (1.0 / std::numbers::sqrt2);
  CHECK(testing::axis_angle(t.axis, expected) < 1e-4);
  CHECK(t.rate == Approx(0.16).epsilon(1e-6));
  CHECK_FALSE(t.degenerate);
  CHECK(t.axis_discrepancy < 1e-4);

  const ArgmaxResult b = argmax_axis(presets::bell(0.0), kK);
  CHECK(b.degenerate);
  CHECK(b.rate == Approx(0.4).epsilon(1e-9));

  const ArgmaxResult d = argmax_axis(presets::dephased(0.5, 0.01), kK);
  CHECK(std::abs(d.axis.z()) < 1e-4);
  CHECK(d.rate == Approx(0.2931117967697244).epsilon(1e-6));
}

TEST_CASE("argmax_axis agrees with svd3 on random states") {
  std::mt19937_64 rng(61);
  int checked_axes = 0;
  for (int s = 0; s < 200; ++s) {
    // pure states have sigma_1 = sigma_2, so draw ranks 2..4 here
    const TwoQubitState state = testing::random_state(rng, 2 + s % 3);
    const ArgmaxResult r = argmax_axis(state, kK);
    CHECK(std::abs(r.rate - r.svd_rate) <= 1e-6 * r.svd_rate);
    const Svd3 svd = svd3(correlation_matrix(state));
    // axis comparison needs an isolated top singular value
    if (svd.sigma[0] - svd.sigma[1] > 1e-3 * svd.sigma[0]) {
      CHECK(r.axis_discrepancy < 1e-4);
      ++checked_axes;
    }
    CHECK(r.grid_rate <= r.rate + 1e-15);
  }
  CHECK(checked_axes > 190);
}

TEST_CASE("map argmax is within a Lipschitz cell bound of the refined rate") {
  std::mt19937_64 rng(71);
  const GridSpec g;
  for (int s = 0; s < 10; ++s) {
    const TwoQubitState state = testing::random_state(rng);
    const RateMap m = rate_map(state, kK, g);
    const GridArgmax a = grid_argmax(m.rate_b, m.zeniths, m.azimuths);
    const ArgmaxResult r = argmax_axis(state, kK);
    const double sigma = svd3(correlation_matrix(state)).sigma[0];
    const double bound = 8 * kK * sigma * sigma * std::hypot(g.zenith_step(), g.azimuth_step());
    CHECK(a.value <= r.rate + 1e-12);
    CHECK(r.rate - a.value <= bound);
  }
}

TEST_CASE("projective map examples") {
  const GridSpec g{37, 73};
  const ProjectiveMap d = projective_map(presets::dephased(0.5, 0.01), kK, g);
  const GridArgmax a = grid_argmax(d.expected_bob_purity, d.zeniths, d.azimuths);
  CHECK(a.zenith_index == 0);
  CHECK(std::abs(a.value - 1.0) < 1e-12);
  const GridArgmax w = grid_argmax(d.rate_b, d.zeniths, d.azimuths);
  CHECK(w.zenith == Approx(kPi / 2));

  const ProjectiveMap b = projective_map(presets::bell(0.0), kK, g);
  for (double p : b.expected_bob_purity) CHECK(std::abs(p - 1.0) < 1e-12);

  const TwoQubitState prod = presets::product(Vec3(0.5, 0.0, 0.0), Vec3(0.0, 0.3, 0.4));
  const ProjectiveMap p = projective_map(prod, kK, g);
  for (double x : p.expected_bob_purity) CHECK(x == Approx(purity(prod, Subsystem::Bob)).epsilon(1e-12));
}

TEST_CASE("grid_argmax takes the first maximum in row-major order") {
  const std::vector<double> zen{0.0, 1.0};
  const std::vector<double> az{0.0, 1.0, 2.0};
  const GridArgmax a = grid_argmax({0.0, 2.0, 1.0, 2.0, 0.0, 0.0}, zen, az);
  CHECK(a.zenith_index == 0);
  CHECK(a.azimuth_index == 1);
  CHECK(a.value == 2.0);
}
