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

#include "biparity/pauli_state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biparity/errors.hpp"
#include "biparity/jacobi.hpp"

namespace biparity {

namespace {

constexpr std::array<char, 4> kPauliLetters{'I', 'X', 'Y', 'Z'};

using Kron = std::array<std::array<Complex, 4>, 4>;

Kron kron(std::size_t i, std::size_t j) {
  const auto& s = pauli_matrices();
  Kron out{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d)
          out[2 * a + b][2 * c + d] = s[i][a][c] * s[j][b][d];
  return out;
}

const std::array<std::array<Kron, 4>, 4>& pauli_products() {
  static const auto table = [] {
    std::array<std::array<Kron, 4>, 4> t{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) t[i][j] = kron(i, j);
    return t;
  }();
  return table;
}

}  // namespace

std::string coefficient_name(std::size_t alice, std::size_t bob) {
  return fmt::format("r_{}{}", kPauliLetters.at(alice), kPauliLetters.at(bob));
}

const std::array<std::array<std::array<Complex, 2>, 2>, 4>& pauli_matrices() {
  static const std::array<std::array<std::array<Complex, 2>, 2>, 4> paulis{{
      {{{1.0, 0.0}, {0.0, 1.0}}},
      {{{0.0, 1.0}, {1.0, 0.0}}},
      {{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}},
      {{{1.0, 0.0}, {0.0, -1.0}}},
  }};
  return paulis;
}

TwoQubitState from_density_matrix(const DensityMatrix& rho) {
  double herm_err = 0.0;
  Complex trace = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    trace += rho[a][a];
    for (std::size_t b = 0; b < 4; ++b)
      herm_err = std::max(herm_err, std::abs(rho[a][b] - std::conj(rho[b][a])));
  }
  if (!(herm_err <= 1e-10)) {
    throw ValidationError(fmt::format(
        "density matrix must be Hermitian within 1e-10 (max |rho - rho^dagger| = {:.3e})",
        herm_err));
  }
  if (!(std::abs(trace - 1.0) <= 1e-10)) {
    throw ValidationError(fmt::format(
        "density matrix must have trace 1 within 1e-10 (trace = {:.12g}{:+.3e}i)",
        trace.real(), trace.imag()));
  }

  const auto& products = pauli_products();
  TwoQubitState out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          acc += (rho[a][b] * products[i][j][b][a]).real();
      out(i, j) = acc;
    }
  }
  out(0, 0) = 1.0;
  return out;
}

DensityMatrix to_density_matrix(const TwoQubitState& state) {
  const auto& products = pauli_products();
  DensityMatrix rho{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double r = state(i, j);
      if (r == 0.0) continue;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          rho[a][b] += 0.25 * r * products[i][j][a][b];
    }
  }
  return rho;
}

Vec3 reduced_bloch(const TwoQubitState& state, Party party) {
  if (party == Party::Alice) return {state(1, 0), state(2, 0), state(3, 0)};
  return {state(0, 1), state(0, 2), state(0, 3)};
}

double purity(const TwoQubitState& state, Subsystem subsystem) {
  switch (subsystem) {
    case Subsystem::Alice: {
      const Vec3 r = reduced_bloch(state, Party::Alice);
      return 0.5 * (1.0 + dot(r, r));
    }
    case Subsystem::Bob: {
      const Vec3 r = reduced_bloch(state, Party::Bob);
      return 0.5 * (1.0 + dot(r, r));
    }
    case Subsystem::Joint: {
      double s = 0.0;
      for (const auto& row : state.coefficients())
        for (double x : row) s += x * x;
      return 0.25 * s;
    }
  }
  return 0.0;
}

Mat3 correlation_matrix(const TwoQubitState& state) {
  Mat3 c;
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j)
      c(j - 1, i - 1) = state(i, j) - state(i, 0) * state(0, j);
  return c;
}

Vec3 delta_r(const TwoQubitState& state, const Vec3& axis) {
  auto r_n = [&](std::size_t j) {
    return axis[0] * state(1, j) + axis[1] * state(2, j) + axis[2] * state(3, j);
  };
  const double r_nI = r_n(0);
  return {r_n(1) - r_nI * state(0, 1), r_n(2) - r_nI * state(0, 2),
          r_n(3) - r_nI * state(0, 3)};
}

std::array<double, 4> hermitian_eigenvalues(const DensityMatrix& h) {
  // Real symmetric embedding [[A, -B], [B, A]] of H = A + iB doubles every
  // eigenvalue of H.
  detail::SquareMatrix<8> m{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const double re = 0.5 * (h[a][b].real() + h[b][a].real());
      const double im = 0.5 * (h[a][b].imag() - h[b][a].imag());
      m[a][b] = re;
      m[a + 4][b + 4] = re;
      m[a][b + 4] = -im;
      m[a + 4][b] = im;
    }
  }
  auto eig = detail::jacobi_eigen<8>(m, 60, 1e-15);
  std::sort(eig.values.begin(), eig.values.end());
  return {eig.values[0], eig.values[2], eig.values[4], eig.values[6]};
}

std::vector<Violation> validate(const TwoQubitState& state, double pos_tol) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (!std::isfinite(state(i, j))) {
        out.push_back({Violation::Kind::NotFinite,
                       fmt::format("{} is not finite", coefficient_name(i, j))});
      }
    }
  }
  if (!out.empty()) return out;

  if (state(0, 0) != 1.0) {
    out.push_back({Violation::Kind::TraceNotUnit,
                   fmt::format("r_II = 1 violated (r_II = {:.17g})", state(0, 0))});
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (std::abs(state(i, j)) > 1.0 + pos_tol) {
        const std::string name = coefficient_name(i, j);
        out.push_back({Violation::Kind::CoefficientRange,
                       fmt::format("|{}| <= 1 violated ({} = {:.17g})", name,
                                   name, state(i, j))});
      }
    }
  }
  const double min_eig = hermitian_eigenvalues(to_density_matrix(state))[0];
  if (min_eig < -pos_tol) {
    out.push_back({Violation::Kind::Positivity,
                   fmt::format("positivity violated: min eigenvalue {:.10g} < -{:g}",
                               min_eig, pos_tol)});
  }
  const double joint = purity(state, Subsystem::Joint);
  if (joint > 1.0 + 4.0 * pos_tol) {
    out.push_back({Violation::Kind::Purity,
                   fmt::format("joint purity <= 1 violated (Tr rho^2 = {:.17g})", joint)});
  }
  return out;
}

void require_valid(const TwoQubitState& state, double pos_tol) {
  const auto violations = validate(state, pos_tol);
  if (!violations.empty()) throw ValidationError(violations.front().message);
}

bool is_physical(const TwoQubitState& state, double tol) {
  for (const auto& row : state.coefficients()) {
    for (double x : row) {
      if (!std::isfinite(x) || std::abs(x) > 1.0 + tol) return false;
    }
  }
  DensityMatrix h = to_density_matrix(state);
  for (std::size_t a = 0; a < 4; ++a) h[a][a] += tol;

  std::array<std::array<Complex, 4>, 4> l{};
  for (std::size_t j = 0; j < 4; ++j) {
    double d = h[j][j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l[j][k]);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l[j][j] = ljj;
    for (std::size_t i = j + 1; i < 4; ++i) {
      Complex s = h[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * std::conj(l[j][k]);
      l[i][j] = s / ljj;
    }
  }
  return true;
}

ProjectiveOutcome projective_measure(const TwoQubitState& state,
                                     const Vec3& axis) {
  if (std::abs(norm(axis) - 1.0) > 1e-12) {
    throw ValidationError("projective_measure: axis must be a unit vector");
  }
  auto r_n = [&](std::size_t j) {
    return axis[0] * state(1, j) + axis[1] * state(2, j) + axis[2] * state(3, j);
  };
  const double r_nI = r_n(0);
  const Vec3 bob = reduced_bloch(state, Party::Bob);
  const Vec3 along{r_n(1), r_n(2), r_n(3)};

  ProjectiveOutcome out;
  out.prob_plus = 0.5 * (1.0 + r_nI);
  out.prob_minus = 0.5 * (1.0 - r_nI);
  out.expected_bob_purity = 0.0;
  if (out.prob_plus >= 1e-12) {
    out.bob_bloch_plus = (bob + along) * (1.0 / (1.0 + r_nI));
    out.expected_bob_purity +=
        out.prob_plus * 0.5 * (1.0 + dot(out.bob_bloch_plus, out.bob_bloch_plus));
  }
  if (out.prob_minus >= 1e-12) {
    out.bob_bloch_minus = (bob - along) * (1.0 / (1.0 - r_nI));
    out.expected_bob_purity +=
        out.prob_minus * 0.5 * (1.0 + dot(out.bob_bloch_minus, out.bob_bloch_minus));
  }
  return out;
}

namespace presets {

TwoQubitState maximally_mixed() { return TwoQubitState{}; }

TwoQubitState bell(double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw ValidationError(fmt::format("bell: -1 <= beta <= 1 violated (beta = {})", beta));
  }
  return dephased(beta, 0.0);
}

TwoQubitState dephased(double beta, double delta) {
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw ValidationError(
        fmt::format("dephased: -1 <= beta <= 1 violated (beta = {})", beta));
  }
  const double coherence = std::sqrt(1.0 - beta * beta);
  if (!(delta >= 0.0 && delta <= coherence)) {
    throw ValidationError(fmt::format(
        "dephased: 0 <= delta <= sqrt(1 - beta^2) = {:.10g} violated (delta = {})",
        coherence, delta));
  }
  const double gamma = coherence - delta;
  TwoQubitState s;
  s.coeff(Pauli::Z, Pauli::Z) = 1.0;
  s.coeff(Pauli::Z, Pauli::I) = beta;
  s.coeff(Pauli::I, Pauli::Z) = beta;
  s.coeff(Pauli::X, Pauli::X) = gamma;
  s.coeff(Pauli::Y, Pauli::Y) = -gamma;
  return s;
}

TwoQubitState jacobs_counterexample() {
  const double c = 1.0 / std::sqrt(5.0);
  TwoQubitState s;
  s.coeff(Pauli::X, Pauli::I) = c;
  s.coeff(Pauli::X, Pauli::Z) = c;
  s.coeff(Pauli::Z, Pauli::Z) = c;
  return s;
}

TwoQubitState product(const Vec3& alice_bloch, const Vec3& bob_bloch) {
  if (dot(alice_bloch, alice_bloch) > 1.0 + 1e-12) {
    throw ValidationError("product: |r_A| <= 1 violated");
  }
  if (dot(bob_bloch, bob_bloch) > 1.0 + 1e-12) {
    throw ValidationError("product: |r_B| <= 1 violated");
  }
  TwoQubitState s;
  for (std::size_t i = 1; i < 4; ++i) {
    s(i, 0) = alice_bloch[i - 1];
    s(0, i) = bob_bloch[i - 1];
    for (std::size_t j = 1; j < 4; ++j) s(i, j) = alice_bloch[i - 1] * bob_bloch[j - 1];
  }
  return s;
}

TwoQubitState by_name(std::string_view name, const Params& params) {
  if (name == "bell") return bell(params.beta);
  if (name == "dephased") return dephased(params.beta, params.delta);
  if (name == "jacobs_counterexample") return jacobs_counterexample();
  if (name == "product") return product(params.alice_bloch, params.bob_bloch);
  if (name == "maximally_mixed") return maximally_mixed();
  throw ValidationError(fmt::format(
      "unknown preset '{}' (expected bell, dephased, jacobs_counterexample, "
      "product or maximally_mixed)",
      name));
}

}  // namespace presets

}  // namespace biparity
