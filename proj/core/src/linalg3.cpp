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

#include "biparity/linalg3.hpp"

#include <algorithm>
#include <numeric>

#include "biparity/errors.hpp"
#include "biparity/jacobi.hpp"

namespace biparity {

Vec3 sign_normalized(const Vec3& a) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(a[i]) > 1e-12) return a[i] > 0.0 ? a : -a;
  }
  return a;
}

double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (const auto& row : a.m)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

namespace {

Vec3 normalized(const Vec3& a) { return a * (1.0 / norm(a)); }

}  // namespace

Svd3 svd3(const Mat3& m) {
  const Mat3 gram = transpose(m) * m;
  detail::SquareMatrix<3> a{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a[r][c] = gram(r, c);
  const auto eig = detail::jacobi_eigen<3>(a, 50, 1e-15);

  std::array<Vec3, 3> vs;
  std::array<Vec3, 3> images;
  std::array<double, 3> sig{};
  for (std::size_t k = 0; k < 3; ++k) {
    vs[k] = {eig.vectors[0][k], eig.vectors[1][k], eig.vectors[2][k]};
    images[k] = m * vs[k];
    sig[k] = norm(images[k]);
  }

  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  Svd3 out;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t src = order[k];
    out.sigma[k] = sig[src];
    const Vec3 v = sign_normalized(vs[src]);
    const bool flipped = !(v == vs[src]);
    out.v[k] = v;
    out.u[k] = flipped ? -images[src] : images[src];
  }

  // Left vectors for (numerically) vanishing singular values are completed
  // from the ones that are determined by M.
  const double cutoff = 1e-13 * std::max(out.sigma[0], 1e-300);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (out.sigma[k] > cutoff && out.sigma[k] > 0.0) {
      out.u[k] = out.u[k] * (1.0 / out.sigma[k]);
      ++rank;
    }
  }
  if (rank == 0) {
    out.u = {Vec3::unit_x(), Vec3::unit_y(), Vec3::unit_z()};
  } else if (rank == 1) {
    const PlaneBasis rest = orthonormal_complement(out.u[0]);
    out.u[1] = rest.p1;
    out.u[2] = rest.p2;
  } else if (rank == 2) {
    out.u[2] = normalized(cross(out.u[0], out.u[1]));
  }
  return out;
}

PlaneBasis orthonormal_complement(const Vec3& v) {
  const double len = norm(v);
  if (!(len > 1e-12)) {
    throw DegenerateInputError(
        "orthonormal_complement: |v| <= 1e-12, plane is undefined");
  }
  const Vec3 vh = v * (1.0 / len);
  std::size_t least = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(vh[i]) < std::abs(vh[least])) least = i;
  }
  Vec3 e;
  e[least] = 1.0;
  const Vec3 p1 = normalized(e - vh * vh[least]);
  const Vec3 p2 = cross(vh, p1);
  return {p1, p2};
}

Mat3 plane_projector(const Vec3& p1, const Vec3& p2) {
  const double tol = 1e-10;
  if (std::abs(dot(p1, p1) - 1.0) > tol || std::abs(dot(p2, p2) - 1.0) > tol ||
      std::abs(dot(p1, p2)) > tol) {
    throw ValidationError(
        "plane_projector: p1, p2 must be orthonormal within 1e-10");
  }
  Mat3 out = outer(p1, p1);
  const Mat3 second = outer(p2, p2);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) out(r, c) += second(r, c);
  return out;
}

}  // namespace biparity
