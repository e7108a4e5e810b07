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
#include <set>
#include <string>

#include "biparity/errors.hpp"
#include "biparity/noise.hpp"
#include "doctest.h"

using namespace biparity;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                             K{0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             K{0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("trajectory keys are distinct across indices and seeds") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    for (std::uint64_t i = 0; i < 25000; ++i) keys.insert(trajectory_key(seed, i));
  CHECK(keys.size() == 100000);
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("two-point increments are exactly +/- sqrt(dt)") {
  const double dt = 1e-3;
  const NoiseStream s(trajectory_key(1, 0), dt);
  int plus = 0;
  const int n = 100000;
  for (int step = 0; step < n; ++step) {
    const double w = s.increment(static_cast<std::uint64_t>(step));
    CHECK(w * w == doctest::Approx(dt).epsilon(1e-15));
    if (w > 0) ++plus;
  }
  // Binomial(1e5, 1/2): 5 sigma is about 790.
  CHECK(std::abs(plus - n / 2) < 800);
}

TEST_CASE("Gaussian increments have the right low moments") {
  const double dt = 1e-4;
  const NoiseStream s(trajectory_key(7, 3), dt, NoiseKind::Gaussian);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int step = 0; step < n; ++step) {
    const double z = s.unit_draw(static_cast<std::uint64_t>(step));
    CHECK(std::isfinite(z));
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  CHECK(std::abs(m1) < 5.0 / std::sqrt(n));
  CHECK(std::abs(m2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 - 3.0) < 5.0 * std::sqrt(96.0 / n));
  CHECK(s.increment(5) == doctest::Approx(std::sqrt(dt) * s.unit_draw(5)));
}

TEST_CASE("noise is a pure function of key and step") {
  const NoiseStream a(123, 1e-3, NoiseKind::Gaussian);
  const NoiseStream b(123, 1e-3, NoiseKind::Gaussian);
  for (std::uint64_t step : {0ull, 1ull, 999ull, 1ull << 40}) CHECK(a.increment(step) == b.increment(step));
  const NoiseStream c(124, 1e-3, NoiseKind::Gaussian);
  CHECK(a.increment(0) != c.increment(0));
}

TEST_CASE("noise kind parsing") {
  CHECK(parse_noise_kind("two_point") == NoiseKind::TwoPoint);
  CHECK(parse_noise_kind("gaussian") == NoiseKind::Gaussian);
  CHECK(std::string(to_string(NoiseKind::Gaussian)) == "gaussian");
  CHECK_THROWS_AS(parse_noise_kind("uniform"), ValidationError);
}
