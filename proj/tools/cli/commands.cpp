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

#include "cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "biparity/control_strategies.hpp"
#include "biparity/ensemble_runner.hpp"
#include "biparity/errors.hpp"
#include "biparity/io.hpp"
#include "biparity/linalg3.hpp"
#include "biparity/scan_analysis.hpp"
#include "biparity/sme_engine.hpp"
#include "json.hpp"

namespace biparity::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultTarget = 0.9;

double clean(double x) { return std::abs(x) < 5e-8 ? 0.0 : x; }

std::string fixed7(double x) { return fmt::format("{:.7f}", clean(x)); }

std::string vec_text(const Vec3& v) {
  return fmt::format("({}, {}, {})", fixed7(v.x()), fixed7(v.y()), fixed7(v.z()));
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

Vec3 to_vec3(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw ValidationError(fmt::format("{} needs three components", flag));
  return {v[0], v[1], v[2]};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError(fmt::format("cannot write '{}'", path));
  return file;
}

void finish_output(std::ofstream& file, const std::string& path) {
  file.flush();
  if (!file) throw IoError(fmt::format("error writing '{}'", path));
}

std::string file_safe(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    out.push_back(keep ? c : '_');
  }
  return out;
}

bool wants_json(const Options& o) {
  if (!o.format.empty()) return o.format == "json";
  return o.out.size() >= 5 && o.out.compare(o.out.size() - 5, 5, ".json") == 0;
}

EnsembleConfig ensemble_config(const Options& o, const TwoQubitState& initial,
                               const std::string& strategy) {
  EnsembleConfig c;
  c.initial = initial;
  c.strategy = parse_strategy(strategy, parse_degeneracy_policy(o.policy));
  c.params.k = o.k;
  c.params.dt = o.dt;
  c.params.t_final = o.t_final;
  c.params.seed = o.seed;
  c.params.noise = parse_noise_kind(o.noise);
  c.params.allow_large_step = o.allow_large_step;
  c.n_traj = o.n_traj;
  c.worker_count = o.workers;
  c.target_pb = o.target_pb;
  return c;
}

struct SlopeEstimate {
  double slope = 0.0;
  double se = 0.0;
};

SlopeEstimate initial_slope(const EnsembleStats& s, double dt) {
  if (s.size() < 2) return {};
  return {(s.mean_pb[1] - s.mean_pb[0]) / dt,
          std::sqrt(s.var_pb[1] / static_cast<double>(s.n_traj)) / dt};
}

std::string target_text(const EnsembleStats& s) {
  const auto median = median_time_to_target(s);
  return median ? fmt::format("{:.4f}", *median) : std::string("not reached");
}

void print_header(std::ostream& out, const LoadedState& st) { fmt::print(out, "state: {}\n", st.label); }

}  // namespace

LoadedState load_state(const StateOptions& s) {
  if (!s.file.empty() && !s.preset.empty())
    throw ValidationError("give either --preset or --file, not both");
  if (s.file.empty() && s.preset.empty()) throw ValidationError("a state is required: --preset or --file");
  LoadedState out;
  if (!s.file.empty()) {
    out.state = io::load_state(s.file);
    out.label = fmt::format("file {}", s.file);
  } else {
    presets::Params params;
    params.beta = s.beta;
    params.delta = s.delta;
    params.alice_bloch = to_vec3(s.alice_bloch, "--ra");
    params.bob_bloch = to_vec3(s.bob_bloch, "--rb");
    out.state = presets::by_name(s.preset, params);
    if (s.preset == "bell")
      out.label = fmt::format("bell(beta={})", s.beta);
    else if (s.preset == "dephased")
      out.label = fmt::format("dephased(beta={}, delta={})", s.beta, s.delta);
    else if (s.preset == "product")
      out.label = fmt::format("product(r_A={}, r_B={})", vec_text(params.alice_bloch),
                              vec_text(params.bob_bloch));
    else
      out.label = s.preset;
  }
  const std::vector<Violation> violations = validate(out.state);
  if (!violations.empty()) {
    std::string message = fmt::format("{} is not a valid state:", out.label);
    for (const Violation& v : violations) message += " " + v.message + ";";
    message.pop_back();
    throw ValidationError(message);
  }
  return out;
}

int cmd_state(const Options& o, std::ostream& out) {
  const LoadedState st = load_state(o.state);
  const TwoQubitState& s = st.state;
  print_header(out, st);

  static constexpr const char* kLabels[] = {"I", "X", "Y", "Z"};
  fmt::print(out, "coefficients r_ij = Tr(rho s_i x s_j) (rows Alice, columns Bob):\n     ");
  for (const char* l : kLabels) fmt::print(out, "{:>11}", l);
  fmt::print(out, "\n");
  for (std::size_t i = 0; i < 4; ++i) {
    fmt::print(out, "  {}  ", kLabels[i]);
    for (std::size_t j = 0; j < 4; ++j) fmt::print(out, "{:>11}", fixed7(s(i, j)));
    fmt::print(out, "\n");
  }

  const Vec3 ra = reduced_bloch(s, Party::Alice);
  const Vec3 rb = reduced_bloch(s, Party::Bob);
  fmt::print(out, "Alice Bloch vector r_A = {}  |r_A| = {}\n", vec_text(ra), fixed7(norm(ra)));
  fmt::print(out, "Bob Bloch vector   r_B = {}  |r_B| = {}\n", vec_text(rb), fixed7(norm(rb)));
  fmt::print(out, "purity: Alice {}  Bob {}  joint {}\n", fixed7(purity(s, Subsystem::Alice)),
             fixed7(purity(s, Subsystem::Bob)), fixed7(purity(s, Subsystem::Joint)));

  const Mat3 c = correlation_matrix(s);
  fmt::print(out, "correlation matrix C (C n = change in Bob's Bloch vector for Alice axis n):\n");
  for (std::size_t r = 0; r < 3; ++r)
    fmt::print(out, "  [ {:>10} {:>10} {:>10} ]\n", fixed7(c(r, 0)), fixed7(c(r, 1)), fixed7(c(r, 2)));
  const Svd3 svd = svd3(c);
  fmt::print(out, "singular values: {}  {}  {}\n", fixed7(svd.sigma[0]), fixed7(svd.sigma[1]),
             fixed7(svd.sigma[2]));
  fmt::print(out, "first right singular vector v1 = {}\n", vec_text(svd.v[0]));
  fmt::print(out, "max Bob purification rate 4k sigma1^2 = {} (k = {})\n",
             fixed7(4.0 * o.k * svd.sigma[0] * svd.sigma[0]), o.k);
  fmt::print(out, "verdict: valid\n");
  if (frobenius_norm(c) < 1e-12)
    fmt::print(out, "note: product state (C = 0); no measurement on Alice changes Bob's purity\n");

  if (!o.out.empty()) {
    io::save_state(o.out, s);
    fmt::print(out, "wrote {}\n", o.out);
  }
  return 0;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const LoadedState st = load_state(o.state);
  const GridSpec grid{o.zenith_count, o.azimuth_count};
  grid.check();
  if (o.grid_points < 100) throw ValidationError("--grid-points >= 100 violated");
  const RateMap map = rate_map(st.state, o.k, grid);
  const GridArgmax cell = grid_argmax(map.rate_b, map.zeniths, map.azimuths);
  const ArgmaxResult best = argmax_axis(st.state, o.k, o.grid_points);

  print_header(out, st);
  fmt::print(out, "rate map: {} x {} grid (phi x theta), k = {}\n", grid.zenith_count, grid.azimuth_count,
             o.k);
  fmt::print(out, "grid argmax of rate_b: phi = {} rad ({:.2f} deg), theta = {} rad ({:.2f} deg), rate_b = {}\n",
             fixed7(cell.zenith), degrees(cell.zenith), fixed7(cell.azimuth), degrees(cell.azimuth),
             fixed7(cell.value));
  fmt::print(out, "refined argmax ({} sphere points + local search): axis = {}, rate_b = {}\n",
             o.grid_points, vec_text(best.axis), fixed7(best.rate));
  fmt::print(out, "SVD answer: v1 = {}, 4k sigma1^2 = {}\n", vec_text(best.svd_axis), fixed7(best.svd_rate));
  fmt::print(out, "axis discrepancy (refined vs SVD, modulo sign): {:.3e} rad\n", best.axis_discrepancy);
  fmt::print(out, "degenerate maximum: {}\n",
             best.degenerate ? "yes (maximiser not unique; the discrepancy is not meaningful)" : "no");
  if (cell.value == 0.0) fmt::print(out, "note: rate_b is identically zero on the grid\n");

  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    if (o.format == "svg")
      io::write_rate_map_svg(file, map);
    else
      io::write_rate_map_csv(file, map);
    finish_output(file, o.out);
    fmt::print(out, "wrote {}\n", o.out);
  }
  if (!o.svg.empty()) {
    std::ofstream file = open_output(o.svg);
    io::write_rate_map_svg(file, map);
    finish_output(file, o.svg);
    fmt::print(out, "wrote {}\n", o.svg);
  }
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.strategies.size() > 1) throw ValidationError("simulate takes one --strategy; use compare for several");
  const LoadedState st = load_state(o.state);
  const std::string strategy = o.strategies.empty() ? std::string("jacobs") : o.strategies.front();
  const EnsembleConfig config = ensemble_config(o, st.state, strategy);
  const EnsembleStats stats = run_ensemble(config).stats;
  const DeterminismReport report = determinism_report(stats, config.params.dt);
  const SlopeEstimate slope = initial_slope(stats, config.params.dt);

  print_header(out, st);
  fmt::print(out, "strategy: {} (degeneracy policy {}), noise {}\n", to_string(config.strategy),
             to_string(config.strategy.degeneracy_policy), to_string(config.params.noise));
  fmt::print(out, "k = {}, dt = {}, t_final = {}, steps = {}, trajectories = {}, seed = {}\n",
             config.params.k, config.params.dt, config.params.t_final, stats.size() - 1, stats.n_traj,
             config.params.seed);
  fmt::print(out, "final mean P_A = {} (var {:.3e}), final mean P_B = {} (var {:.3e})\n",
             fixed7(stats.mean_pa.back()), stats.var_pa.back(), fixed7(stats.mean_pb.back()),
             stats.var_pb.back());
  fmt::print(out, "initial slope of mean P_B = {} +- {} (1 SE)\n", fixed7(slope.slope), fixed7(slope.se));
  fmt::print(out, "determinism (tolerance 10*dt = {}): P_A max spread {:.3e} -> {}; P_B max spread {:.3e} -> {}\n",
             report.tol_det, report.max_spread_a, report.deterministic_a ? "deterministic" : "stochastic",
             report.max_spread_b, report.deterministic_b ? "deterministic" : "stochastic");
  fmt::print(out, "positivity flags: {} trajectories\n", stats.flagged_positivity_count);
  if (config.target_pb)
    fmt::print(out, "median time to P_B >= {}: {}\n", *config.target_pb, target_text(stats));

  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    if (wants_json(o))
      file << io::ensemble_json(config, stats, report);
    else
      io::write_stats_csv(file, stats);
    finish_output(file, o.out);
    fmt::print(out, "wrote {}\n", o.out);
  }
  if (!o.trajectory_out.empty()) {
    const NoiseStream noise(trajectory_key(config.params.seed, 0), config.params.dt, config.params.noise);
    const TrajectoryRecord rec =
        simulate_trajectory(config.initial, Controller(config.strategy), config.params, noise);
    std::ofstream file = open_output(o.trajectory_out);
    io::write_trajectory_csv(file, rec);
    finish_output(file, o.trajectory_out);
    fmt::print(out, "wrote {}\n", o.trajectory_out);
  }
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.strategies.size() < 2) throw ValidationError("compare needs at least two --strategy values");
  const LoadedState st = load_state(o.state);
  Options shared = o;
  if (!shared.target_pb) shared.target_pb = kDefaultTarget;

  print_header(out, st);
  fmt::print(out, "shared seed {}, {} trajectories per strategy, k = {}, dt = {}, t_final = {}, noise {}\n",
             o.seed, o.n_traj, o.k, o.dt, o.t_final, o.noise);
  fmt::print(out, "{:<22}{:>14}{:>12}{:>14}{:>14}  {}\n", "strategy", "slope P_B(0)", "+- SE",
             "final <P_A>", "final <P_B>", fmt::format("median t(P_B >= {})", *shared.target_pb));

  json doc;
  doc["schema_version"] = io::kSchemaVersion;
  doc["target_pb"] = *shared.target_pb;
  doc["strategies"] = json::array();
  std::string summary_csv = "strategy,initial_slope_pb,initial_slope_se,final_mean_pa,final_mean_pb,"
                            "median_time_to_target\n";
  const bool as_json = wants_json(o);

  for (const std::string& name : o.strategies) {
    const EnsembleConfig config = ensemble_config(shared, st.state, name);
    const EnsembleStats stats = run_ensemble(config).stats;
    const DeterminismReport report = determinism_report(stats, config.params.dt);
    const SlopeEstimate slope = initial_slope(stats, config.params.dt);
    const std::string label = to_string(config.strategy);
    const std::string hit = target_text(stats);
    fmt::print(out, "{:<22}{:>14}{:>12}{:>14}{:>14}  {}\n", label, fixed7(slope.slope), fixed7(slope.se),
               fixed7(stats.mean_pa.back()), fixed7(stats.mean_pb.back()), hit);
    summary_csv += fmt::format("{},{},{},{},{},{}\n", label, slope.slope, slope.se, stats.mean_pa.back(),
                               stats.mean_pb.back(), hit);

    if (o.out.empty()) continue;
    if (as_json) {
      json entry;
      entry["strategy"] = label;
      entry["summary"] = {{"initial_slope_pb", slope.slope},
                          {"initial_slope_se", slope.se},
                          {"final_mean_pa", stats.mean_pa.back()},
                          {"final_mean_pb", stats.mean_pb.back()},
                          {"median_time_to_target", hit}};
      entry["ensemble"] = json::parse(io::ensemble_json(config, stats, report));
      doc["strategies"].push_back(std::move(entry));
    } else {
      const std::string path = fmt::format("{}_{}.csv", o.out, file_safe(label));
      std::ofstream file = open_output(path);
      io::write_stats_csv(file, stats);
      finish_output(file, path);
      fmt::print(out, "wrote {}\n", path);
    }
  }

  if (!o.out.empty()) {
    const std::string path = as_json ? o.out : o.out + "_summary.csv";
    std::ofstream file = open_output(path);
    if (as_json)
      file << doc.dump(2) << "\n";
    else
      file << summary_csv;
    finish_output(file, path);
    fmt::print(out, "wrote {}\n", path);
  }
  return 0;
}

ProjectSummary summarize_projection(const TwoQubitState& state, double k, const GridSpec& grid,
                                    ProjectiveMap* map_out) {
  grid.check();
  ProjectiveMap map = projective_map(state, k, grid);
  ProjectSummary s;
  s.projective = grid_argmax(map.expected_bob_purity, map.zeniths, map.azimuths);
  s.projective_axis = spherical_axis(s.projective.zenith, s.projective.azimuth);
  s.weak = grid_argmax(map.rate_b, map.zeniths, map.azimuths);
  s.weak_axis = spherical_axis(s.weak.zenith, s.weak.azimuth);
  s.bob_prior_purity = purity(state, Subsystem::Bob);
  if (map_out) *map_out = std::move(map);
  return s;
}

int cmd_project(const Options& o, std::ostream& out) {
  const LoadedState st = load_state(o.state);
  ProjectiveMap map;
  const ProjectSummary s = summarize_projection(st.state, o.k, GridSpec{o.zenith_count, o.azimuth_count}, &map);

  print_header(out, st);
  fmt::print(out, "grid: {} x {} (phi x theta), k = {}\n", o.zenith_count, o.azimuth_count, o.k);
  fmt::print(out, "Bob prior purity: {:.12f}\n", s.bob_prior_purity);
  fmt::print(out, "projective argmax: phi = {} rad ({:.2f} deg), theta = {} rad ({:.2f} deg), axis = {}, "
                  "expected Bob purity = {:.12f}\n",
             fixed7(s.projective.zenith), degrees(s.projective.zenith), fixed7(s.projective.azimuth),
             degrees(s.projective.azimuth), vec_text(s.projective_axis), s.projective.value);
  fmt::print(out, "weak-rate argmax:  phi = {} rad ({:.2f} deg), theta = {} rad ({:.2f} deg), axis = {}, "
                  "rate_b = {}\n",
             fixed7(s.weak.zenith), degrees(s.weak.zenith), fixed7(s.weak.azimuth), degrees(s.weak.azimuth),
             vec_text(s.weak_axis), fixed7(s.weak.value));
  const double angle = std::atan2(norm(cross(s.projective_axis, s.weak_axis)),
                                  std::abs(dot(s.projective_axis, s.weak_axis)));
  fmt::print(out, "angle between the two axes (modulo sign): {:.2f} deg\n", degrees(angle));

  if (!o.out.empty()) {
    std::ofstream file = open_output(o.out);
    io::write_projective_csv(file, map);
    finish_output(file, o.out);
    fmt::print(out, "wrote {}\n", o.out);
  }
  return 0;
}

}  // namespace biparity::cli
