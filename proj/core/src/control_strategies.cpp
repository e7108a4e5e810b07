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

#include "biparity/control_strategies.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "biparity/errors.hpp"

namespace biparity {

namespace {

constexpr double kTiny = 1e-12;
constexpr double kParallelTol = 1e-10;

void require_unit(const Vec3& axis, const char* where) {
  if (!(std::abs(norm(axis) - 1.0) <= 1e-12)) {
    throw ValidationError(fmt::format("{}: axis must be a unit vector (|n| = {:.17g})",
                                      where, norm(axis)));
  }
}

AxisChoice canonical_fallback() { return {Vec3::unit_z(), true, false}; }

[[noreturn]] void throw_degenerate(const char* what) {
  throw DegenerateInputError(what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError(fmt::format("cannot parse number '{}'", text));
  }
  return value;
}

// "45deg" -> radians, "0.3rad" or "0.3" -> 0.3.
double parse_angle(std::string_view text, bool& had_suffix) {
  text = trim(text);
  had_suffix = false;
  if (text.ends_with("deg")) {
    had_suffix = true;
    return parse_number(text.substr(0, text.size() - 3)) * std::numbers::pi / 180.0;
  }
  if (text.ends_with("rad")) {
    had_suffix = true;
    return parse_number(text.substr(0, text.size() - 3));
  }
  return parse_number(text);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

DegeneracyPolicy parse_degeneracy_policy(std::string_view text) {
  if (text == "error") return DegeneracyPolicy::Error;
  if (text == "canonical" || text == "fallback_canonical")
    return DegeneracyPolicy::FallbackCanonical;
  if (text == "nested" || text == "fallback_nested") return DegeneracyPolicy::FallbackNested;
  throw ValidationError(fmt::format(
      "unknown degeneracy policy '{}' (expected error, fallback_canonical or fallback_nested)",
      text));
}

std::string_view to_string(DegeneracyPolicy policy) {
  switch (policy) {
    case DegeneracyPolicy::Error: return "error";
    case DegeneracyPolicy::FallbackCanonical: return "fallback_canonical";
    case DegeneracyPolicy::FallbackNested: return "fallback_nested";
  }
  return "fallback_nested";
}

StrategyConfig parse_strategy(std::string_view text, DegeneracyPolicy policy) {
  text = trim(text);
  StrategyConfig out;
  out.degeneracy_policy = policy;
  if (text.starts_with("fixed:")) {
    out.kind = StrategyKind::Fixed;
    const auto parts = split(text.substr(6), ',');
    if (parts.size() == 3) {
      const Vec3 raw{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
      if (!(norm(raw) > kTiny)) throw ValidationError("fixed axis must be nonzero");
      out.fixed_axis = raw * (1.0 / norm(raw));
    } else if (parts.size() == 2) {
      bool zenith_suffix = false;
      bool azimuth_suffix = false;
      const double zenith = parse_angle(parts[0], zenith_suffix);
      const double azimuth = parse_angle(parts[1], azimuth_suffix);
      if (!zenith_suffix || !azimuth_suffix) {
        throw ValidationError(
            "fixed axis given as angles needs explicit 'deg' or 'rad' suffixes");
      }
      out.fixed_axis = spherical_axis(zenith, azimuth);
    } else {
      throw ValidationError(
          "fixed strategy expects fixed:<x>,<y>,<z> or fixed:<zenith>deg,<azimuth>deg");
    }
    return out;
  }
  if (text == "along_bloch") {
    out.kind = StrategyKind::AlongBloch;
  } else if (text == "jacobs" || text == "jacobs_alice") {
    out.kind = StrategyKind::JacobsAlice;
  } else if (text == "bob_opt" || text == "bob_optimal") {
    out.kind = StrategyKind::BobOptimal;
  } else if (text == "bob_det" || text == "bob_deterministic") {
    out.kind = StrategyKind::BobDeterministic;
  } else if (text == "simultaneous" || text == "simultaneous_det") {
    out.kind = StrategyKind::SimultaneousDet;
  } else {
    throw ValidationError(fmt::format(
        "unknown strategy '{}' (expected fixed:<x>,<y>,<z>, along_bloch, jacobs, "
        "bob_opt, bob_det or simultaneous)",
        text));
  }
  return out;
}

std::string to_string(const StrategyConfig& config) {
  switch (config.kind) {
    case StrategyKind::Fixed: {
      const Vec3 a = config.fixed_axis.value_or(Vec3::unit_z());
      return fmt::format("fixed:{},{},{}", a[0], a[1], a[2]);
    }
    case StrategyKind::AlongBloch: return "along_bloch";
    case StrategyKind::JacobsAlice: return "jacobs";
    case StrategyKind::BobOptimal: return "bob_opt";
    case StrategyKind::BobDeterministic: return "bob_det";
    case StrategyKind::SimultaneousDet: return "simultaneous";
  }
  return "jacobs";
}

void check(const StrategyConfig& config) {
  const bool fixed = config.kind == StrategyKind::Fixed;
  if (fixed != config.fixed_axis.has_value()) {
    throw ValidationError("fixed_axis must be present exactly when kind is fixed");
  }
  if (fixed) require_unit(*config.fixed_axis, "fixed strategy");
}

RateTerms rate_alice(const TwoQubitState& state, const Vec3& axis, double k) {
  require_unit(axis, "rate_alice");
  const Vec3 r_a = reduced_bloch(state, Party::Alice);
  const double r_nI = dot(axis, r_a);
  const double mixedness = 1.0 - dot(r_a, r_a);
  return {4.0 * k * (1.0 - r_nI * r_nI) * mixedness,
          r_nI * mixedness * std::sqrt(8.0 * k)};
}

RateTerms rate_bob(const TwoQubitState& state, const Vec3& axis, double k) {
  require_unit(axis, "rate_bob");
  const Vec3 drift_dir = correlation_matrix(state) * axis;
  const Vec3 r_b = reduced_bloch(state, Party::Bob);
  return {4.0 * k * dot(drift_dir, drift_dir), dot(r_b, drift_dir) * std::sqrt(8.0 * k)};
}

Vec3 bob_noise_direction(const TwoQubitState& state) {
  return transpose(correlation_matrix(state)) * reduced_bloch(state, Party::Bob);
}

AxisChoice best_axis_in_plane(const Mat3& c, const Vec3& normal) {
  const PlaneBasis plane = orthonormal_complement(normal);
  const Mat3 projector = plane_projector(plane.p1, plane.p2);
  const Svd3 svd = svd3(c * projector);
  if (svd.sigma[0] < kTiny) return {plane.p1, false, true};
  // v1 already lies in the plane up to rounding; project to make the
  // orthogonality exact.
  const Vec3 in_plane = projector * svd.v[0];
  return {sign_normalized(in_plane * (1.0 / norm(in_plane))), false, false};
}

AxisChoice select_axis_bob_optimal(const TwoQubitState& state, DegeneracyPolicy policy) {
  const Mat3 c = correlation_matrix(state);
  if (frobenius_norm(c) <= kTiny) {
    switch (policy) {
      case DegeneracyPolicy::Error:
        throw_degenerate("bob_optimal: correlation matrix vanishes, every axis is optimal");
      case DegeneracyPolicy::FallbackCanonical:
        return canonical_fallback();
      case DegeneracyPolicy::FallbackNested: {
        const Vec3 r_a = reduced_bloch(state, Party::Alice);
        if (norm(r_a) <= kTiny) return canonical_fallback();
        AxisChoice choice = best_axis_in_plane(c, r_a);
        choice.fallback = true;
        return choice;
      }
    }
  }
  return {svd3(c).v[0], false, false};
}

AxisChoice select_axis_jacobs_alice(const TwoQubitState& state, DegeneracyPolicy policy) {
  const Vec3 r_a = reduced_bloch(state, Party::Alice);
  if (norm(r_a) <= kTiny) {
    switch (policy) {
      case DegeneracyPolicy::Error:
        throw_degenerate("jacobs_alice: Alice's Bloch vector vanishes, plane is undefined");
      case DegeneracyPolicy::FallbackCanonical:
        return canonical_fallback();
      case DegeneracyPolicy::FallbackNested: {
        AxisChoice choice =
            select_axis_bob_optimal(state, DegeneracyPolicy::FallbackCanonical);
        choice.fallback = true;
        return choice;
      }
    }
  }
  return best_axis_in_plane(correlation_matrix(state), r_a);
}

AxisChoice select_axis_along_bloch(const TwoQubitState& state, DegeneracyPolicy policy) {
  const Vec3 r_a = reduced_bloch(state, Party::Alice);
  const double len = norm(r_a);
  if (len <= kTiny) {
    switch (policy) {
      case DegeneracyPolicy::Error:
        throw_degenerate("along_bloch: Alice's Bloch vector vanishes");
      case DegeneracyPolicy::FallbackCanonical:
        return canonical_fallback();
      case DegeneracyPolicy::FallbackNested: {
        AxisChoice choice =
            select_axis_bob_optimal(state, DegeneracyPolicy::FallbackCanonical);
        choice.fallback = true;
        return choice;
      }
    }
  }
  return {r_a * (1.0 / len), false, false};
}

AxisChoice select_axis_bob_deterministic(const TwoQubitState& state,
                                         DegeneracyPolicy policy) {
  const Vec3 noise_dir = bob_noise_direction(state);
  if (norm(noise_dir) <= kTiny) {
    // Every axis keeps P_B noise-free; the unconstrained optimum applies.
    AxisChoice choice = select_axis_bob_optimal(state, policy);
    choice.fallback = true;
    return choice;
  }
  return best_axis_in_plane(correlation_matrix(state), noise_dir);
}

AxisChoice select_axis_simultaneous(const TwoQubitState& state) {
  const Vec3 r_a = reduced_bloch(state, Party::Alice);
  const Vec3 noise_dir = bob_noise_direction(state);
  const double len_a = norm(r_a);
  const double len_b = norm(noise_dir);
  const Mat3 c = correlation_matrix(state);

  if (len_a > kTiny && len_b > kTiny) {
    const Vec3 n = cross(r_a * (1.0 / len_a), noise_dir * (1.0 / len_b));
    const double len_n = norm(n);
    if (len_n > kParallelTol) return {sign_normalized(n * (1.0 / len_n)), false, false};
    // Parallel: the shared orthogonal plane satisfies both conditions.
    return best_axis_in_plane(c, r_a);
  }
  if (len_a > kTiny) return best_axis_in_plane(c, r_a);
  if (len_b > kTiny) return best_axis_in_plane(c, noise_dir);
  AxisChoice choice = select_axis_bob_optimal(state, DegeneracyPolicy::FallbackCanonical);
  choice.fallback = true;
  return choice;
}

Controller::Controller(StrategyConfig config) : config_(std::move(config)) {
  check(config_);
}

AxisChoice Controller::choose(const TwoQubitState& state) const {
  switch (config_.kind) {
    case StrategyKind::Fixed: return {*config_.fixed_axis, false, false};
    case StrategyKind::AlongBloch:
      return select_axis_along_bloch(state, config_.degeneracy_policy);
    case StrategyKind::JacobsAlice:
      return select_axis_jacobs_alice(state, config_.degeneracy_policy);
    case StrategyKind::BobOptimal:
      return select_axis_bob_optimal(state, config_.degeneracy_policy);
    case StrategyKind::BobDeterministic:
      return select_axis_bob_deterministic(state, config_.degeneracy_policy);
    case StrategyKind::SimultaneousDet:
      return select_axis_simultaneous(state);
  }
  return {Vec3::unit_z(), true, false};
}

}  // namespace biparity
