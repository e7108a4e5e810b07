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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "biparity/errors.hpp"
#include "biparity/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace biparity;
namespace fs = std::filesystem;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "biparity_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("state JSON round trip is exact") {
  for (const TwoQubitState& s : {presets::dephased(0.5, 0.01), presets::jacobs_counterexample(),
                                 presets::bell(-0.3)}) {
    CHECK(io::state_from_json(io::state_to_json(s)) == s);
  }
  const fs::path path = scratch("state.json");
  io::save_state(path, presets::jacobs_counterexample());
  CHECK(io::load_state(path) == presets::jacobs_counterexample());
}

TEST_CASE("malformed state files") {
  CHECK_THROWS_AS(io::state_from_json("{"), ValidationError);
  CHECK_THROWS_AS(io::state_from_json("{\"q\": 1}"), ValidationError);
  CHECK_THROWS_AS(io::state_from_json("{\"r\": [[1,0,0,0]]}"), ValidationError);
  CHECK_THROWS_AS(io::state_from_json("{\"r\": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,\"x\"]]}"),
                  ValidationError);
  CHECK_THROWS_AS(io::load_state(scratch("does_not_exist.json")), IoError);
  CHECK_THROWS_AS(io::save_state("/nonexistent_dir/for/sure/state.json", presets::bell(0.0)), IoError);
  // parse succeeds; physical validation is a separate step
  const TwoQubitState bad =
      io::state_from_json("{\"r\": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[1.5,0,0,0]]}");
  CHECK(bad.coeff(Pauli::Z, Pauli::I) == 1.5);
  CHECK_FALSE(validate(bad).empty());
}

TEST_CASE("trajectory CSV layout") {
  const Controller c(parse_strategy("bob_opt"));
  SimParams p;
  p.t_final = 0.01;
  const TrajectoryRecord rec = simulate_trajectory(presets::jacobs_counterexample(), c, p, NoiseStream(1, p.dt));
  std::ostringstream out;
  io::write_trajectory_csv(out, rec);
  const std::string csv = out.str();
  CHECK(first_line(csv) ==
        "t,r_II,r_IX,r_IY,r_IZ,r_XI,r_XX,r_XY,r_XZ,r_YI,r_YX,r_YY,r_YZ,r_ZI,r_ZX,r_ZY,r_ZZ,"
        "n_x,n_y,n_z,dW,P_A,P_B");
  CHECK(count_lines(csv) == rec.size() + 1);
}

TEST_CASE("stats CSV and JSON") {
  EnsembleConfig c;
  c.initial = presets::dephased(0.5, 0.01);
  c.strategy = parse_strategy("simultaneous");
  c.params.t_final = 0.01;
  c.n_traj = 4;
  c.target_pb = 0.9;
  const EnsembleStats s = run_ensemble(c).stats;
  std::ostringstream out;
  io::write_stats_csv(out, s);
  CHECK(first_line(out.str()) ==
        "t,mean_pa,var_pa,q05_pa,q50_pa,q95_pa,mean_pb,var_pb,q05_pb,q50_pb,q95_pb");
  CHECK(count_lines(out.str()) == s.size() + 1);

  const std::string text = io::ensemble_json(c, s, determinism_report(s, c.params.dt));
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc.at("schema_version") == io::kSchemaVersion);
  CHECK(doc.at("config").at("params").at("dt") == 1e-3);
  CHECK(doc.at("config").at("strategy").at("kind") == "simultaneous_det");
  CHECK(doc.at("config").at("n_traj") == 4);
  CHECK(doc.at("metadata").at("median_time_to_target_pb") == "not reached");
  CHECK(doc.at("stats").at("mean_pb").size() == s.size());
  CHECK(text == io::ensemble_json(c, s, determinism_report(s, c.params.dt)));
}

TEST_CASE("rate map CSV and SVG") {
  const GridSpec g{5, 9};
  const RateMap m = rate_map(presets::jacobs_counterexample(), 0.1, g);
  std::ostringstream csv;
  io::write_rate_map_csv(csv, m);
  CHECK(first_line(csv.str()) == "phi_rad,theta_rad,rate_a,rate_b");
  CHECK(count_lines(csv.str()) == 5 * 9 + 1);
  // phi varies slowest
  std::istringstream rows(csv.str());
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  CHECK(line.rfind("0,0,", 0) == 0);
  std::getline(rows, line);
  CHECK(line.rfind("0,0.78539", 0) == 0);

  std::ostringstream a, b;
  io::write_rate_map_svg(a, m);
  io::write_rate_map_svg(b, m);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("<svg") != std::string::npos);
  CHECK(a.str().find("max=0.1599999") != std::string::npos);

  const ProjectiveMap pm = projective_map(presets::dephased(0.5, 0.01), 0.1, g);
  std::ostringstream pcsv;
  io::write_projective_csv(pcsv, pm);
  CHECK(first_line(pcsv.str()) == "phi_rad,theta_rad,expected_bob_purity,rate_b");
  CHECK(count_lines(pcsv.str()) == 5 * 9 + 1);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1e-5, 0.8560254037844386, -3.0, 0.0}) CHECK(std::stod(io::format_double(x)) == x);
  CHECK(io::format_double(0.5) == "0.5");
}
