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

#include <cmath>
#include <random>

#include "biparity/errors.hpp"
#include "biparity/linalg3.hpp"
#include "biparity/pauli_state.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace biparity;
using doctest::Approx;

namespace {

void check_svd_invariants(const Mat3& m, const Svd3& s, double tol) {
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(s.sigma[k] >= 0.0);
    if (k > 0) CHECK(s.sigma[k - 1] >= s.sigma[k]);
    const Vec3 residual = m * s.v[k] - s.u[k] * s.sigma[k];
    CHECK(norm(residual) < tol);
    sum_sq += s.sigma[k] * s.sigma[k];
    for (std::size_t l = 0; l < 3; ++l)
      CHECK(std::abs(dot(s.v[k], s.v[l]) - (k == l ? 1.0 : 0.0)) < tol);
  }
  const double fro = frobenius_norm(m);
  CHECK(std::abs(sum_sq - fro * fro) < tol);
}

}  // namespace

TEST_CASE("svd3 of a diagonal matrix") {
  const Mat3 m = Mat3::diag(3.0, -2.0, 1.0);
  const Svd3 s = svd3(m);
  CHECK(s.sigma[0] == Approx(3.0));
  CHECK(s.sigma[1] == Approx(2.0));
  CHECK(s.sigma[2] == Approx(1.0));
  CHECK(std::abs(std::abs(s.v[0].x()) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(s.v[1].y()) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(s.v[2].z()) - 1.0) < 1e-12);
  check_svd_invariants(m, s, 1e-10);
}

TEST_CASE("svd3 of the dephased correlation matrix keeps the x axis first") {
  const double gamma = std::sqrt(0.75) - 0.01;
  const Mat3 c = correlation_matrix(presets::dephased(0.5, 0.01));
  const Svd3 s = svd3(c);
  CHECK(s.sigma[0] == Approx(0.8560254037844386).epsilon(1e-12));
  CHECK(s.sigma[1] == Approx(gamma).epsilon(1e-12));
  CHECK(s.sigma[2] == Approx(0.75).epsilon(1e-12));
  CHECK(s.v[0] == Vec3::unit_x());
}

TEST_CASE("svd3 of the counterexample correlation matrix matches brute force") {
  const Mat3 c = correlation_matrix(presets::jacobs_counterexample());
  // Oracle: dense search over the sphere, independent of svd3.
  Vec3 grid_axis;
  const double grid_max = testing::brute_force_max_gain(c, 1'000'000, &grid_axis);
  const Svd3 s = svd3(c);
  CHECK(s.sigma[0] == Approx(std::sqrt(2.0 / 5.0)).epsilon(1e-12));
  CHECK(std::abs(s.sigma[0] - grid_max) / s.sigma[0] < 1e-5);
  CHECK(s.sigma[1] < 1e-12);
  CHECK(s.sigma[2] < 1e-12);
  const Vec3 expected = Vec3(1.0, 0.0, 1.0) * (1.0 / std::sqrt(2.0));
  CHECK(norm(s.v[0] - expected) < 1e-9);
  CHECK(testing::axis_angle(grid_axis, expected) < 5e-3);
  check_svd_invariants(c, s, 1e-10);
}

TEST_CASE("svd3 of the zero matrix returns the canonical basis") {
  const Svd3 s = svd3(Mat3::zero());
  for (std::size_t k = 0; k < 3; ++k) CHECK(s.sigma[k] == 0.0);
  CHECK(s.v[0] == Vec3::unit_x());
  CHECK(s.v[1] == Vec3::unit_y());
  CHECK(s.v[2] == Vec3::unit_z());
}

TEST_CASE("svd3 sign convention makes the first nonzero component of v positive") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Svd3 s = svd3(testing::random_matrix(rng));
    for (const Vec3& v : s.v) {
      const double lead = std::abs(v.x()) > 1e-12 ? v.x() : (std::abs(v.y()) > 1e-12 ? v.y() : v.z());
      CHECK(lead > 0.0);
    }
  }
}

TEST_CASE("svd3 property: reconstruction and invariants on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    Mat3 m = testing::random_matrix(rng);
    if (trial % 10 == 0) {
      // rank-deficient case
      const Vec3 a = testing::random_unit(rng);
      const Vec3 b = testing::random_unit(rng);
      m = outer(a, b);
    }
    const Svd3 s = svd3(m);
    check_svd_invariants(m, s, 1e-10);
    Mat3 rebuilt;
    for (std::size_t k = 0; k < 3; ++k) {
      const Mat3 term = outer(s.u[k], s.v[k]);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) rebuilt(r, c) += s.sigma[k] * term(r, c);
    }
    double err = 0.0;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) err += std::pow(rebuilt(r, c) - m(r, c), 2);
    CHECK(std::sqrt(err) < 1e-9);
  }
}

TEST_CASE("svd3 sigma_1 agrees with a 1e6-point sphere search") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat3 m = testing::random_matrix(rng);
    const double grid = testing::brute_force_max_gain(m, 1'000'000);
    const double sigma = svd3(m).sigma[0];
    CHECK(grid <= sigma * (1.0 + 1e-12));
    CHECK((sigma - grid) / sigma < 1e-5);
  }
}

TEST_CASE("orthonormal_complement examples") {
  const PlaneBasis z = orthonormal_complement(Vec3::unit_z());
  CHECK(z.p1 == Vec3::unit_x());
  CHECK(z.p2 == Vec3::unit_y());

  const PlaneBasis x = orthonormal_complement(Vec3::unit_x());
  CHECK(x.p1 == Vec3::unit_y());
  CHECK(x.p2 == Vec3::unit_z());

  const Vec3 diag = Vec3(1.0, 1.0, 0.0) * (1.0 / std::sqrt(2.0));
  const PlaneBasis d = orthonormal_complement(diag);
  CHECK(std::abs(dot(d.p1, diag)) < 1e-12);
  CHECK(std::abs(dot(d.p2, diag)) < 1e-12);
  CHECK(std::abs(dot(d.p1, d.p2)) < 1e-12);
  CHECK(norm(d.p1) == Approx(1.0).epsilon(1e-12));
  CHECK(norm(d.p2) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormal_complement is right-handed and scale invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec3 v = testing::random_unit(rng);
    const PlaneBasis b = orthonormal_complement(v);
    CHECK(norm(cross(b.p1, b.p2) - v) < 1e-12);
    const double scale = std::exp(std::uniform_real_distribution<double>(-20.0, 20.0)(rng));
    const PlaneBasis scaled = orthonormal_complement(v * scale);
    CHECK(norm(scaled.p1 - b.p1) < 1e-12);
    CHECK(norm(scaled.p2 - b.p2) < 1e-12);
  }
}

TEST_CASE("orthonormal_complement rejects a vanishing vector") {
  CHECK_THROWS_AS(orthonormal_complement(Vec3{}), DegenerateInputError);
  CHECK_THROWS_AS(orthonormal_complement(Vec3(1e-13, 0.0, 0.0)), DegenerateInputError);
}

TEST_CASE("plane_projector") {
  CHECK(plane_projector(Vec3::unit_x(), Vec3::unit_y()) == Mat3::diag(1.0, 1.0, 0.0));
  CHECK_THROWS_AS(plane_projector(Vec3::unit_x(), Vec3(1.0, 1.0, 0.0)), ValidationError);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 normal = testing::random_unit(rng);
    const PlaneBasis b = orthonormal_complement(normal);
    const Mat3 p = plane_projector(b.p1, b.p2);
    const Mat3 p2 = p * p;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        CHECK(std::abs(p2(r, c) - p(r, c)) < 1e-10);
        CHECK(std::abs(p(r, c) - p(c, r)) < 1e-15);
      }
    CHECK(norm(p * normal) < 1e-12);
    const Svd3 s = svd3(p);
    CHECK(s.sigma[1] == Approx(1.0));
    CHECK(s.sigma[2] < 1e-10);
  }
}

TEST_CASE("cross product") {
  CHECK(cross(Vec3::unit_x(), Vec3::unit_y()) == Vec3::unit_z());
  const Vec3 a{0.3, -0.2, 0.9};
  CHECK(cross(a, a) == Vec3{});
  CHECK(cross(Vec3(0.0, 0.0, 0.5), Vec3(0.0, 0.0, -2.0)) == Vec3{});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 u = testing::random_unit(rng);
    const Vec3 w = testing::random_unit(rng);
    const Vec3 c = cross(u, w);
    CHECK(std::abs(dot(c, u)) < 1e-12);
    CHECK(std::abs(dot(c, w)) < 1e-12);
  }
}

TEST_CASE("counterexample sigma_1 is sqrt(2/5), not the quoted 1/sqrt(5)") {
  // The quoted single singular value 1/sqrt(5) disagrees with brute force:
  // C maps x and z both onto (0, 0, 1/sqrt5), so |C (x+z)/sqrt2| = sqrt(2/5).
  // Either orientation of C gives the same value. The rate 4k sigma_1^2 = 0.16
  // at k = 0.1 follows from sqrt(2/5).
  const Mat3 c = correlation_matrix(presets::jacobs_counterexample());
  const double sigma = svd3(c).sigma[0];
  const double sigma_transposed = svd3(transpose(c)).sigma[0];
  const double quoted = 1.0 / std::sqrt(5.0);
  CHECK_MESSAGE(std::abs(sigma - std::sqrt(0.4)) < 1e-12, "sigma_1 should be sqrt(2/5)");
  CHECK_MESSAGE(std::abs(sigma_transposed - std::sqrt(0.4)) < 1e-12, "orientation does not matter");
  CHECK_MESSAGE(std::abs(sigma - quoted) > 0.18,
                "1/sqrt(5) is not the largest singular value; brute force gives sqrt(2/5)");
  CHECK(4 * 0.1 * sigma * sigma == Approx(0.16).epsilon(1e-12));
}
