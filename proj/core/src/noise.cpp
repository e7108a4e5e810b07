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

#include "biparity/noise.hpp"

#include <cmath>
#include <numbers>

#include "biparity/errors.hpp"

namespace biparity {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// Uniform in (0, 1]: 53 random bits, offset by one ulp so log() is finite.
inline double uniform_open_closed(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trajectory_key(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

std::string_view to_string(NoiseKind kind) {
  return kind == NoiseKind::TwoPoint ? "two_point" : "gaussian";
}

NoiseKind parse_noise_kind(std::string_view text) {
  if (text == "two_point") return NoiseKind::TwoPoint;
  if (text == "gaussian") return NoiseKind::Gaussian;
  throw ValidationError("noise kind must be 'two_point' or 'gaussian'");
}

NoiseStream::NoiseStream(std::uint64_t key, double dt, NoiseKind kind)
    : key_(key), dt_(dt), sqrt_dt_(std::sqrt(dt)), kind_(kind) {
  if (!(dt > 0.0)) throw ValidationError("NoiseStream: dt > 0 violated");
}

double NoiseStream::unit_draw(std::uint64_t step) const {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(step),
                                static_cast<std::uint32_t>(step >> 32), 0u, 0u};
  const Philox4x32::Key key{static_cast<std::uint32_t>(key_),
                            static_cast<std::uint32_t>(key_ >> 32)};
  const auto words = Philox4x32::generate(ctr, key);
  if (kind_ == NoiseKind::TwoPoint) return (words[0] >> 31) ? 1.0 : -1.0;

  const double u1 = uniform_open_closed(words[0], words[1]);
  const double u2 = uniform_open_closed(words[2], words[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double NoiseStream::increment(std::uint64_t step) const {
  return sqrt_dt_ * unit_draw(step);
}

}  // namespace biparity
