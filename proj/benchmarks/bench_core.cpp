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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "biparity/control_strategies.hpp"
#include "biparity/ensemble_runner.hpp"
#include "biparity/linalg3.hpp"
#include "biparity/pauli_state.hpp"
#include "biparity/scan_analysis.hpp"
#include "biparity/sme_engine.hpp"

namespace {

using namespace biparity;

const Vec3 kAxis = Vec3(1.0, 0.0, 1.0) * (1.0 / std::numbers::sqrt2);

void BM_Svd3(benchmark::State& state) {
  const Mat3 c = correlation_matrix(presets::dephased(0.3, 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(svd3(c));
}
BENCHMARK(BM_Svd3);

void BM_StepPauli(benchmark::State& state) {
  TwoQubitState s = presets::jacobs_counterexample();
  for (auto _ : state) {
    s = step_pauli(s, kAxis, 0.1, 1e-3, 1e-5);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepPauli);

void BM_StepDense(benchmark::State& state) {
  DensityMatrix rho = to_density_matrix(presets::jacobs_counterexample());
  for (auto _ : state) {
    rho = step_dense(rho, kAxis, 0.1, 1e-3, 1e-5);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_StepDense);

void BM_SelectSimultaneous(benchmark::State& state) {
  const TwoQubitState s = presets::dephased(0.5, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(select_axis_simultaneous(s));
}
BENCHMARK(BM_SelectSimultaneous);

void BM_IsPhysical(benchmark::State& state) {
  const TwoQubitState s = presets::dephased(0.5, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(is_physical(s, 1e-6));
}
BENCHMARK(BM_IsPhysical);

void BM_RateMap(benchmark::State& state) {
  const TwoQubitState s = presets::jacobs_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(rate_map(s, 0.1));
}
BENCHMARK(BM_RateMap)->Unit(benchmark::kMillisecond);

void BM_ArgmaxAxis(benchmark::State& state) {
  const TwoQubitState s = presets::jacobs_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(argmax_axis(s, 0.1));
}
BENCHMARK(BM_ArgmaxAxis)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  EnsembleConfig c;
  c.initial = presets::dephased(0.5, 0.01);
  c.strategy = parse_strategy("simultaneous");
  c.params.t_final = 0.1;
  c.n_traj = static_cast<std::size_t>(state.range(0));
  c.worker_count = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(c));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_Ensemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
