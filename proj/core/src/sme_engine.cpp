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

#include "biparity/sme_engine.hpp"

#include <cmath>

#include <fmt/format.h>

#include "biparity/errors.hpp"

namespace biparity {

namespace {

void require_step_inputs(const Vec3& axis, const char* where) {
  if (!(std::abs(norm(axis) - 1.0) <= 1e-12)) {
    throw ValidationError(fmt::format("{}: axis must be a unit vector", where));
  }
}

using Matrix4 = std::array<std::array<Complex, 4>, 4>;

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
  Matrix4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex ark = a[r][k];
      if (ark == Complex(0.0)) continue;
      for (std::size_t c = 0; c < 4; ++c) out[r][c] += ark * b[k][c];
    }
  return out;
}

// y = n.sigma (x) I.
Matrix4 alice_observable(const Vec3& n) {
  const auto& s = pauli_matrices();
  std::array<std::array<Complex, 2>, 2> single{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      single[a][c] = n[0] * s[1][a][c] + n[1] * s[2][a][c] + n[2] * s[3][a][c];
  Matrix4 y{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t b = 0; b < 2; ++b) y[2 * a + b][2 * c + b] = single[a][c];
  return y;
}

}  // namespace

std::size_t SimParams::step_count() const {
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

void SimParams::check() const {
  if (!(k > 0.0)) throw ValidationError(fmt::format("k > 0 violated (k = {})", k));
  if (!(dt > 0.0)) throw ValidationError(fmt::format("dt > 0 violated (dt = {})", dt));
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ValidationError(fmt::format("t_final >= 0 violated (t_final = {})", t_final));
  }
  if (!(pos_tol >= 0.0)) throw ValidationError("pos_tol >= 0 violated");
  if (k * dt > kMaxStrengthStep && !allow_large_step) {
    throw NumericalGuardError(fmt::format(
        "k*dt = {:g} exceeds the Euler step bound {:g}; reduce dt or allow large steps",
        k * dt, kMaxStrengthStep));
  }
}

TwoQubitState step_pauli(const TwoQubitState& state, const Vec3& axis, double k,
                         double dt, double dW) {
  require_step_inputs(axis, "step_pauli");
  for (const auto& row : state.coefficients())
    for (double x : row)
      if (std::isnan(x)) throw ValidationError("step_pauli: state contains NaN");

  const PlaneBasis plane = orthonormal_complement(axis);
  const std::array<Vec3, 3> frame{axis, plane.p1, plane.p2};

  // Alice rows in the rotated frame: f[a][j] = sum_i e_a,i r_ij.
  std::array<std::array<double, 4>, 3> f{};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t j = 0; j < 4; ++j)
      f[a][j] = frame[a][0] * state(1, j) + frame[a][1] * state(2, j) +
                frame[a][2] * state(3, j);

  const double gain = std::sqrt(8.0 * k) * dW;
  const double r_nI = f[0][0];
  const double damping = 4.0 * k * dt + r_nI * gain;

  std::array<std::array<double, 4>, 3> g = f;
  std::array<double, 4> identity_row{};
  for (std::size_t j = 0; j < 4; ++j) {
    const double r_Ij = state(0, j);
    const double r_nj = f[0][j];
    g[0][j] = r_nj + (r_Ij - r_nI * r_nj) * gain;
    g[1][j] = f[1][j] - damping * f[1][j];
    g[2][j] = f[2][j] - damping * f[2][j];
    identity_row[j] = r_Ij + (r_nj - r_nI * r_Ij) * gain;
  }

  TwoQubitState out;
  for (std::size_t j = 0; j < 4; ++j) out(0, j) = identity_row[j];
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = frame[0][i - 1] * g[0][j] + frame[1][i - 1] * g[1][j] +
                  frame[2][i - 1] * g[2][j];
  return out;
}

DensityMatrix step_dense(const DensityMatrix& rho, const Vec3& axis, double k, double dt,
                         double dW) {
  require_step_inputs(axis, "step_dense");
  Complex trace = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    trace += rho[a][a];
    for (std::size_t b = 0; b < 4; ++b)
      if (std::isnan(rho[a][b].real()) || std::isnan(rho[a][b].imag()))
        throw ValidationError("step_dense: state contains NaN");
  }
  if (std::abs(trace - 1.0) > 1e-8) {
    throw ValidationError("step_dense: trace 1 within 1e-8 violated");
  }

  const Matrix4 y = alice_observable(axis);
  const Matrix4 y_rho = multiply(y, rho);
  const Matrix4 rho_y = multiply(rho, y);
  const Matrix4 y_rho_y = multiply(y_rho, y);
  const Matrix4 y_y_rho = multiply(y, y_rho);
  const Matrix4 rho_y_y = multiply(rho_y, y);

  double expectation = 0.0;
  for (std::size_t a = 0; a < 4; ++a) expectation += y_rho[a][a].real();

  const double sqrt_2k = std::sqrt(2.0 * k);
  DensityMatrix next{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      // [y,[y,rho]] = y y rho - 2 y rho y + rho y y
      const Complex double_commutator = y_y_rho[a][b] - 2.0 * y_rho_y[a][b] + rho_y_y[a][b];
      const Complex innovation = y_rho[a][b] + rho_y[a][b] - 2.0 * expectation * rho[a][b];
      next[a][b] = rho[a][b] - k * dt * double_commutator + sqrt_2k * dW * innovation;
    }
  }
  DensityMatrix out{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      out[a][b] = 0.5 * (next[a][b] + std::conj(next[b][a]));
  return out;
}

FeedbackStep feedback_step(const TwoQubitState& state, const Controller& controller,
                           const SimParams& params, const NoiseStream& noise,
                           std::uint64_t step_index) {
  AxisChoice choice;
  try {
    choice = controller.choose(state);
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(fmt::format("step {}: {}", step_index, e.what()));
  }
  const double dW = noise.increment(step_index);
  return {step_pauli(state, choice.axis, params.k, params.dt, dW), choice.axis, dW};
}

TrajectoryRecord simulate_trajectory(const TwoQubitState& initial,
                                     const Controller& controller,
                                     const SimParams& params, const NoiseStream& noise) {
  params.check();
  require_valid(initial);
  if (noise.dt() != params.dt) {
    throw ValidationError("simulate_trajectory: noise stream dt differs from params.dt");
  }
  const std::size_t steps = params.step_count();

  TrajectoryRecord rec;
  rec.times.reserve(steps + 1);
  rec.states.reserve(steps + 1);
  rec.axes.reserve(steps + 1);
  rec.noises.reserve(steps + 1);
  rec.purities_a.reserve(steps + 1);
  rec.purities_b.reserve(steps + 1);

  auto push = [&](const TwoQubitState& s, const Vec3& axis, double dW, std::size_t step) {
    rec.times.push_back(static_cast<double>(step) * params.dt);
    rec.states.push_back(s);
    rec.axes.push_back(axis);
    rec.noises.push_back(dW);
    rec.purities_a.push_back(purity(s, Subsystem::Alice));
    rec.purities_b.push_back(purity(s, Subsystem::Bob));
    if (!rec.positivity_flagged && !is_physical(s, params.pos_tol)) {
      rec.positivity_flagged = true;
      rec.first_flagged_step = step;
    }
  };

  TwoQubitState current = initial;
  push(current, Vec3{}, 0.0, 0);
  for (std::size_t s = 0; s < steps; ++s) {
    const FeedbackStep next = feedback_step(current, controller, params, noise, s);
    current = next.state;
    push(current, next.axis, next.dW, s + 1);
  }
  return rec;
}

}  // namespace biparity
