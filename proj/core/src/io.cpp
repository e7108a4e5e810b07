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

#include "biparity/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "biparity/errors.hpp"
#include "json.hpp"

namespace biparity::io {

namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string_view strategy_kind_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Fixed: return "fixed";
    case StrategyKind::AlongBloch: return "along_bloch";
    case StrategyKind::JacobsAlice: return "jacobs_alice";
    case StrategyKind::BobOptimal: return "bob_optimal";
    case StrategyKind::BobDeterministic: return "bob_deterministic";
    case StrategyKind::SimultaneousDet: return "simultaneous_det";
  }
  return "unknown";
}

json state_json_value(const TwoQubitState& state) {
  json rows = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(state(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Viridis-like five-stop ramp.
std::array<int, 3> colour(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto seg = std::min<std::size_t>(3, static_cast<std::size_t>(t));
  const double f = t - static_cast<double>(seg);
  std::array<int, 3> rgb{};
  for (std::size_t c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(stops[seg][c] + f * (stops[seg + 1][c] - stops[seg][c])));
  return rgb;
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

std::string state_to_json(const TwoQubitState& state) {
  return json{{"r", state_json_value(state)}}.dump(2) + "\n";
}

TwoQubitState state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("state file is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("r")) {
    throw ValidationError("state file must be an object with key \"r\"");
  }
  const json& rows = doc.at("r");
  if (!rows.is_array() || rows.size() != 4) {
    throw ValidationError("state file: \"r\" must hold 4 rows");
  }
  TwoQubitState state;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 4) {
      throw ValidationError(fmt::format("state file: row {} must hold 4 numbers", i));
    }
    for (std::size_t j = 0; j < 4; ++j) {
      if (!rows[i][j].is_number()) {
        throw ValidationError(
            fmt::format("state file: {} is not a number", coefficient_name(i, j)));
      }
      state(i, j) = rows[i][j].get<double>();
    }
  }
  return state;
}

TwoQubitState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open state file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return state_from_json(buffer.str());
}

void save_state(const std::filesystem::path& path, const TwoQubitState& state) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write state file '{}'", path.string()));
  out << state_to_json(state);
  if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  out << "t";
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out << ',' << coefficient_name(i, j);
  out << ",n_x,n_y,n_z,dW,P_A,P_B\n";
  for (std::size_t row = 0; row < record.size(); ++row) {
    out << format_double(record.times[row]);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out << ',' << format_double(record.states[row](i, j));
    const Vec3& n = record.axes[row];
    out << ',' << format_double(n[0]) << ',' << format_double(n[1]) << ','
        << format_double(n[2]) << ',' << format_double(record.noises[row]) << ','
        << format_double(record.purities_a[row]) << ',' << format_double(record.purities_b[row])
        << '\n';
  }
}

void write_stats_csv(std::ostream& out, const EnsembleStats& stats) {
  out << "t,mean_pa,var_pa,q05_pa,q50_pa,q95_pa,mean_pb,var_pb,q05_pb,q50_pb,q95_pb\n";
  for (std::size_t row = 0; row < stats.size(); ++row) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", stats.times[row],
                       stats.mean_pa[row], stats.var_pa[row], stats.q05_pa[row],
                       stats.q50_pa[row], stats.q95_pa[row], stats.mean_pb[row],
                       stats.var_pb[row], stats.q05_pb[row], stats.q50_pb[row],
                       stats.q95_pb[row]);
  }
}

std::string ensemble_json(const EnsembleConfig& config, const EnsembleStats& stats,
                          const DeterminismReport& report) {
  json cfg;
  cfg["initial"] = {{"r", state_json_value(config.initial)}};
  cfg["strategy"] = {
      {"name", to_string(config.strategy)},
      {"kind", strategy_kind_name(config.strategy.kind)},
      {"degeneracy_policy", to_string(config.strategy.degeneracy_policy)},
      {"fixed_axis", config.strategy.fixed_axis ? vec_json(*config.strategy.fixed_axis)
                                                : json(nullptr)}};
  cfg["params"] = {{"k", config.params.k},
                   {"dt", config.params.dt},
                   {"t_final", config.params.t_final},
                   {"seed", config.params.seed},
                   {"noise", to_string(config.params.noise)},
                   {"allow_large_step", config.params.allow_large_step},
                   {"pos_tol", config.params.pos_tol}};
  cfg["n_traj"] = config.n_traj;
  cfg["target_pb"] = config.target_pb ? json(*config.target_pb) : json(nullptr);

  json meta;
  meta["steps"] = stats.size() == 0 ? 0 : stats.size() - 1;
  meta["flagged_positivity_count"] = stats.flagged_positivity_count;
  meta["seeding"] = "trajectory_key = splitmix64(seed + 0x9E3779B97F4A7C15*(i+1)); "
                    "Philox4x32-10 counter = step index";
  meta["determinism"] = {{"tol_det", report.tol_det},
                         {"tol_det_rule", "10*dt"},
                         {"max_spread_pa", report.max_spread_a},
                         {"max_spread_pb", report.max_spread_b},
                         {"deterministic_pa", report.deterministic_a},
                         {"deterministic_pb", report.deterministic_b}};
  if (config.target_pb) {
    const auto median = median_time_to_target(stats);
    meta["median_time_to_target_pb"] = median ? json(*median) : json("not reached");
  }

  json data;
  data["t"] = stats.times;
  data["mean_pa"] = stats.mean_pa;
  data["var_pa"] = stats.var_pa;
  data["q05_pa"] = stats.q05_pa;
  data["q50_pa"] = stats.q50_pa;
  data["q95_pa"] = stats.q95_pa;
  data["mean_pb"] = stats.mean_pb;
  data["var_pb"] = stats.var_pb;
  data["q05_pb"] = stats.q05_pb;
  data["q50_pb"] = stats.q50_pb;
  data["q95_pb"] = stats.q95_pb;
  if (!stats.time_to_target_pb.empty()) {
    json hits = json::array();
    for (double t : stats.time_to_target_pb) hits.push_back(finite_or_null(t));
    data["time_to_target_pb"] = std::move(hits);
  }

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = std::move(cfg);
  doc["metadata"] = std::move(meta);
  doc["stats"] = std::move(data);
  return doc.dump(2) + "\n";
}

void write_rate_map_csv(std::ostream& out, const RateMap& map) {
  out << "phi_rad,theta_rad,rate_a,rate_b\n";
  for (std::size_t i = 0; i < map.zenith_count; ++i)
    for (std::size_t j = 0; j < map.azimuth_count; ++j)
      out << fmt::format("{},{},{},{}\n", map.zeniths[i], map.azimuths[j], map.a(i, j),
                         map.b(i, j));
}

void write_rate_map_svg(std::ostream& out, const RateMap& map) {
  const auto [lo_it, hi_it] = std::minmax_element(map.rate_b.begin(), map.rate_b.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = hi - lo;
  constexpr int kCell = 2;
  constexpr int kMargin = 40;
  const int width = static_cast<int>(map.azimuth_count) * kCell;
  const int height = static_cast<int>(map.zenith_count) * kCell;

  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "shape-rendering=\"crispEdges\">\n",
      width + 2 * kMargin, height + 2 * kMargin);
  out << fmt::format(
      "<metadata>rate_b = 4k|C n|^2; k={}; colour scale linear from min={} (dark) to "
      "max={} (bright); x: azimuth theta 0..2pi, y: zenith phi 0..pi</metadata>\n",
      format_double(map.k), format_double(lo), format_double(hi));
  out << fmt::format("<g transform=\"translate({},{})\">\n", kMargin, kMargin);
  for (std::size_t i = 0; i < map.zenith_count; ++i) {
    for (std::size_t j = 0; j < map.azimuth_count; ++j) {
      const double t = span > 0.0 ? (map.b(i, j) - lo) / span : 0.0;
      const auto rgb = colour(t);
      out << fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{:02x}{:02x}{:02x}\"/>\n",
          static_cast<int>(j) * kCell, static_cast<int>(i) * kCell, kCell, kCell, rgb[0],
          rgb[1], rgb[2]);
    }
  }
  out << "</g>\n";
  out << fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">rate_b min {} "
      "max {}</text>\n",
      kMargin, height + kMargin + 24, fmt::format("{:.6g}", lo), fmt::format("{:.6g}", hi));
  out << "</svg>\n";
}

void write_projective_csv(std::ostream& out, const ProjectiveMap& map) {
  out << "phi_rad,theta_rad,expected_bob_purity,rate_b\n";
  for (std::size_t i = 0; i < map.zenith_count; ++i)
    for (std::size_t j = 0; j < map.azimuth_count; ++j) {
      const std::size_t idx = i * map.azimuth_count + j;
      out << fmt::format("{},{},{},{}\n", map.zeniths[i], map.azimuths[j],
                         map.expected_bob_purity[idx], map.rate_b[idx]);
    }
}

}  // namespace biparity::io
