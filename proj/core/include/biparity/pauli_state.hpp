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
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "biparity/linalg3.hpp"

namespace biparity {

/// Pauli index used for both parties. Order matches the coefficient matrix.
enum class Pauli : std::size_t { I = 0, X = 1, Y = 2, Z = 3 };

enum class Party { Alice, Bob };
enum class Subsystem { Alice, Bob, Joint };

using Complex = std::complex<double>;

/// Dense 4x4 density matrix in the |ab> basis, Alice's bit most significant.
using DensityMatrix = std::array<std::array<Complex, 4>, 4>;

inline constexpr double kDefaultPosTol = 1e-9;

/// Two-qubit state stored as real Pauli coefficients
///   rho = 1/4 sum_ij r_ij sigma_i (x) sigma_j,   r_ij = Tr(rho sigma_i (x) sigma_j)
/// with i indexing Alice and j indexing Bob. Construction does not validate;
/// integrator outputs may drift slightly outside the physical set and are
/// checked with validate() instead.
class TwoQubitState {
 public:
  using Coefficients = std::array<std::array<double, 4>, 4>;

  /// Maximally mixed state.
  TwoQubitState() { r_[0][0] = 1.0; }
  explicit TwoQubitState(const Coefficients& r) : r_(r) {}

  double operator()(std::size_t alice, std::size_t bob) const {
    return r_[alice][bob];
  }
  double& operator()(std::size_t alice, std::size_t bob) {
    return r_[alice][bob];
  }
  double coeff(Pauli alice, Pauli bob) const {
    return r_[static_cast<std::size_t>(alice)][static_cast<std::size_t>(bob)];
  }
  double& coeff(Pauli alice, Pauli bob) {
    return r_[static_cast<std::size_t>(alice)][static_cast<std::size_t>(bob)];
  }

  const Coefficients& coefficients() const { return r_; }

  friend bool operator==(const TwoQubitState&, const TwoQubitState&) = default;

 private:
  Coefficients r_{};
};

/// Label such as "r_ZI" for coefficient (alice, bob).
std::string coefficient_name(std::size_t alice, std::size_t bob);

/// The four single-qubit Pauli matrices I, X, Y, Z.
const std::array<std::array<std::array<Complex, 2>, 2>, 4>& pauli_matrices();

/// Throws ValidationError unless rho is Hermitian and has unit trace within
/// 1e-10. r_II is set to exactly 1.
TwoQubitState from_density_matrix(const DensityMatrix& rho);
DensityMatrix to_density_matrix(const TwoQubitState& state);

/// Alice: (r_XI, r_YI, r_ZI). Bob: (r_IX, r_IY, r_IZ).
Vec3 reduced_bloch(const TwoQubitState& state, Party party);

/// (1 + |r|^2)/2 for a party, (1/4) sum r_ij^2 for the joint state.
double purity(const TwoQubitState& state, Subsystem subsystem);

/// C with C(j, i) = r_ij - r_iI r_Ij for i, j in {X, Y, Z}: the linear map
/// from Alice's measurement axis n to Bob's drift direction Delta R_n.
Mat3 correlation_matrix(const TwoQubitState& state);

/// Delta R_n computed componentwise, r_nj - r_nI r_Ij. Reference route for C.
Vec3 delta_r(const TwoQubitState& state, const Vec3& axis);

struct Violation {
  enum class Kind { NotFinite, TraceNotUnit, CoefficientRange, Positivity, Purity };
  Kind kind;
  std::string message;
};

/// Checks every TwoQubitState invariant; an empty result means valid.
std::vector<Violation> validate(const TwoQubitState& state,
                                double pos_tol = kDefaultPosTol);

/// Throws ValidationError carrying the first violation's message.
void require_valid(const TwoQubitState& state, double pos_tol = kDefaultPosTol);

/// Eigenvalues of a Hermitian 4x4 matrix, ascending.
std::array<double, 4> hermitian_eigenvalues(const DensityMatrix& h);

/// Cheap physicality test used in trajectory loops: finite coefficients with
/// |r_ij| <= 1 + tol and rho + tol*I admitting a Cholesky factorisation.
bool is_physical(const TwoQubitState& state, double tol);

struct ProjectiveOutcome {
  double prob_plus = 0.0;
  double prob_minus = 0.0;
  Vec3 bob_bloch_plus;
  Vec3 bob_bloch_minus;
  double expected_bob_purity = 0.5;
};

/// Projective measurement of Alice's qubit along a unit axis; reports the
/// conditional Bob states. Branches with probability below 1e-12 are left
/// out of the expectation (their Bloch vectors are reported as zero).
ProjectiveOutcome projective_measure(const TwoQubitState& state,
                                     const Vec3& axis);

namespace presets {

TwoQubitState maximally_mixed();

/// sqrt((1+beta)/2)|00> + sqrt((1-beta)/2)|11>, -1 <= beta <= 1.
TwoQubitState bell(double beta);

/// The dephased family 1/4 (II + ZZ + beta ZI + beta IZ + gamma (XX - YY)),
/// gamma = sqrt(1 - beta^2) - delta, 0 <= delta <= sqrt(1 - beta^2).
TwoQubitState dephased(double beta, double delta);

/// 1/4 (II + (XI + XZ + ZZ)/sqrt(5)): Alice's Bloch vector lies in the
/// xy-plane yet Bob is purified fastest off that plane.
TwoQubitState jacobs_counterexample();

TwoQubitState product(const Vec3& alice_bloch, const Vec3& bob_bloch);

struct Params {
  double beta = 0.0;
  double delta = 0.0;
  Vec3 alice_bloch;
  Vec3 bob_bloch;
};

/// Lookup by name: bell, dephased, jacobs_counterexample, product,
/// maximally_mixed. Throws ValidationError for unknown names.
TwoQubitState by_name(std::string_view name, const Params& params);

}  // namespace presets

}  // namespace biparity
