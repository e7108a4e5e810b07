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
#include <cmath>
#include <cstddef>
#include <utility>

namespace biparity {

/// Real 3-vector: Bloch vectors and measurement axes.
struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : v{x, y, z} {}

  constexpr double x() const { return v[0]; }
  constexpr double y() const { return v[1]; }
  constexpr double z() const { return v[2]; }
  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  static constexpr Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
  static constexpr Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
  static constexpr Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& c : v) c *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Right-handed cross product. A zero result is meaningful (parallel inputs).
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Flips the sign so the first component with magnitude above 1e-12 is
/// positive. Singular vectors and axes are only defined up to sign.
Vec3 sign_normalized(const Vec3& a);

/// Real 3x3 matrix, row-major.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const {
    return m[r][c];
  }

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 diag(double a, double b, double c) {
    Mat3 out;
    out(0, 0) = a;
    out(1, 1) = b;
    out(2, 2) = c;
    return out;
  }
  /// Matrix whose k-th column is cols[k].
  static constexpr Mat3 from_columns(const std::array<Vec3, 3>& cols) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) out(r, c) = cols[c][r];
    return out;
  }

  constexpr Vec3 column(std::size_t c) const {
    return {m[0][c], m[1][c], m[2][c]};
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 out;
  for (std::size_t r = 0; r < 3; ++r)
    out[r] = a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2];
  return out;
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return out;
}

constexpr Mat3 transpose(const Mat3& a) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = a(c, r);
  return out;
}

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) = a[r] * b[c];
  return out;
}

double frobenius_norm(const Mat3& a);

/// Unit vector (sin z cos a, sin z sin a, cos z) for zenith z from +z and
/// azimuth a from +x.
inline Vec3 spherical_axis(double zenith, double azimuth) {
  return {std::sin(zenith) * std::cos(azimuth),
          std::sin(zenith) * std::sin(azimuth), std::cos(zenith)};
}

/// Singular value decomposition of a 3x3 matrix, sigma sorted descending.
/// Satisfies M v[k] = sigma[k] u[k].
struct Svd3 {
  std::array<double, 3> sigma{};
  std::array<Vec3, 3> v;  ///< right singular vectors
  std::array<Vec3, 3> u;  ///< left singular vectors
};

/// Cyclic Jacobi on M^T M, then sigma_k = |M v_k| and u_k = M v_k / sigma_k.
/// Left vectors of (numerically) zero singular values are completed to an
/// orthonormal set. Every v_k is sign-normalized (see sign_normalized); ties
/// between equal singular values keep canonical-axis order. The zero matrix
/// gives sigma = 0 and v = canonical basis.
Svd3 svd3(const Mat3& m);

struct PlaneBasis {
  Vec3 p1;
  Vec3 p2;
};

/// Orthonormal basis of the plane orthogonal to v such that {v/|v|, p1, p2}
/// is right-handed. p1 is the normalized rejection of the canonical axis
/// least aligned with v (ties broken x, y, z), p2 = v_hat x p1.
/// Throws DegenerateInputError when |v| <= 1e-12.
PlaneBasis orthonormal_complement(const Vec3& v);

/// P = p1 p1^T + p2 p2^T. Throws ValidationError unless p1, p2 are
/// orthonormal within 1e-10.
Mat3 plane_projector(const Vec3& p1, const Vec3& p2);

}  // namespace biparity
