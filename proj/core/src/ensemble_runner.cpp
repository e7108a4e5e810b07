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

#include "biparity/ensemble_runner.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "biparity/errors.hpp"
#include "biparity/noise.hpp"

namespace biparity {

namespace {

// Steps advanced per trajectory between statistics passes.
constexpr std::size_t kBatchSteps = 64;

std::size_t resolve_workers(std::size_t requested, std::size_t n_traj) {
  std::size_t w = requested;
  if (w == 0) w = std::max<unsigned>(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(w, n_traj));
}

struct Moments {
  double mean, var, min, max;
};

// Welford in index order.
Moments moments(const double* values, std::size_t n) {
  double mean = 0.0;
  double m2 = 0.0;
  double lo = values[0];
  double hi = values[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double x = values[i];
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return {mean, std::max(var, 0.0), lo, hi};
}

struct PartyColumns {
  std::vector<double>* mean;
  std::vector<double>* var;
  std::vector<double>* min;
  std::vector<double>* max;
  std::vector<double>* q05;
  std::vector<double>* q50;
  std::vector<double>* q95;
};

void summarize(const double* values, std::size_t n, std::size_t row,
               const PartyColumns& cols, std::vector<double>& scratch) {
  const Moments m = moments(values, n);
  (*cols.mean)[row] = m.mean;
  (*cols.var)[row] = m.var;
  (*cols.min)[row] = m.min;
  (*cols.max)[row] = m.max;
  scratch.assign(values, values + n);
  (*cols.q05)[row] = quantile(scratch, 0.05);
  (*cols.q50)[row] = quantile(scratch, 0.50);
  (*cols.q95)[row] = quantile(scratch, 0.95);
}

void resize_stats(EnsembleStats& s, std::size_t rows) {
  for (auto* v : {&s.times, &s.mean_pa, &s.var_pa, &s.min_pa, &s.max_pa, &s.q05_pa,
                  &s.q50_pa, &s.q95_pa, &s.mean_pb, &s.var_pb, &s.min_pb, &s.max_pb,
                  &s.q05_pb, &s.q50_pb, &s.q95_pb}) {
    v->assign(rows, 0.0);
  }
}

}  // namespace

double quantile(std::vector<double>& values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo),
                   values.end());
  const double a = values[lo];
  if (frac == 0.0 || lo + 1 >= values.size()) return a;
  const double b = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                                     values.end());
  if (std::isinf(a) || std::isinf(b)) return a == b ? a : (frac > 0.0 ? b : a);
  return a + frac * (b - a);
}

std::optional<double> median_time_to_target(const EnsembleStats& stats) {
  if (stats.time_to_target_pb.empty()) return std::nullopt;
  std::vector<double> times = stats.time_to_target_pb;
  const double median = quantile(times, 0.5);
  if (!std::isfinite(median)) return std::nullopt;
  return median;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  const SimParams& params = config.params;
  params.check();
  require_valid(config.initial);
  check(config.strategy);
  if (config.n_traj == 0) throw ValidationError("n_traj >= 1 violated");
  if (config.target_pb && !(*config.target_pb > 0.5 && *config.target_pb <= 1.0)) {
    throw ValidationError("target purity must lie in (0.5, 1]");
  }

  const Controller controller(config.strategy);
  const std::size_t n = config.n_traj;
  const std::size_t steps = params.step_count();
  const std::size_t workers = resolve_workers(config.worker_count, n);
  constexpr double kNever = std::numeric_limits<double>::infinity();

  std::vector<TwoQubitState> states(n, config.initial);
  std::vector<NoiseStream> streams;
  streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    streams.emplace_back(trajectory_key(params.seed, i), params.dt, params.noise);

  std::vector<char> flagged(n, 0);
  std::vector<double> hit(config.target_pb ? n : 0, kNever);

  EnsembleResult result;
  EnsembleStats& stats = result.stats;
  stats.n_traj = n;
  resize_stats(stats, steps + 1);
  for (std::size_t s = 0; s <= steps; ++s) stats.times[s] = static_cast<double>(s) * params.dt;

  if (config.record_trajectories) {
    result.records.resize(n);
    for (auto& rec : result.records) {
      const double pa = purity(config.initial, Subsystem::Alice);
      const double pb = purity(config.initial, Subsystem::Bob);
      rec.times.reserve(steps + 1);
      rec.times.push_back(0.0);
      rec.states.push_back(config.initial);
      rec.axes.push_back(Vec3{});
      rec.noises.push_back(0.0);
      rec.purities_a.push_back(pa);
      rec.purities_b.push_back(pb);
    }
  }

  const PartyColumns alice{&stats.mean_pa, &stats.var_pa, &stats.min_pa, &stats.max_pa,
                           &stats.q05_pa,  &stats.q50_pa, &stats.q95_pa};
  const PartyColumns bob{&stats.mean_pb, &stats.var_pb, &stats.min_pb, &stats.max_pb,
                         &stats.q05_pb,  &stats.q50_pb, &stats.q95_pb};

  std::vector<double> buf_a(std::min(kBatchSteps, std::max<std::size_t>(steps, 1)) * n);
  std::vector<double> buf_b(buf_a.size());
  std::vector<double> scratch;
  scratch.reserve(n);

  // Row 0: the shared initial state.
  {
    const double pa = purity(config.initial, Subsystem::Alice);
    const double pb = purity(config.initial, Subsystem::Bob);
    std::fill_n(buf_a.begin(), n, pa);
    std::fill_n(buf_b.begin(), n, pb);
    summarize(buf_a.data(), n, 0, alice, scratch);
    summarize(buf_b.data(), n, 0, bob, scratch);
    const bool physical = is_physical(config.initial, params.pos_tol);
    for (std::size_t i = 0; i < n; ++i) {
      if (!physical) flagged[i] = 1;
      if (config.target_pb && pb >= *config.target_pb) hit[i] = 0.0;
    }
    for (auto& rec : result.records) {
      if (!physical) rec.positivity_flagged = true;
    }
  }

  for (std::size_t start = 0; start < steps; start += kBatchSteps) {
    const std::size_t len = std::min(kBatchSteps, steps - start);

    auto advance_range = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        TwoQubitState s = states[i];
        for (std::size_t b = 0; b < len; ++b) {
          const std::size_t step = start + b;
          const FeedbackStep next = feedback_step(s, controller, params, streams[i], step);
          s = next.state;
          const double pa = purity(s, Subsystem::Alice);
          const double pb = purity(s, Subsystem::Bob);
          buf_a[b * n + i] = pa;
          buf_b[b * n + i] = pb;
          const bool physical = is_physical(s, params.pos_tol);
          if (!flagged[i] && !physical) flagged[i] = 1;
          if (!hit.empty() && hit[i] == kNever && pb >= *config.target_pb)
            hit[i] = static_cast<double>(step + 1) * params.dt;
          if (config.record_trajectories) {
            TrajectoryRecord& rec = result.records[i];
            rec.times.push_back(static_cast<double>(step + 1) * params.dt);
            rec.states.push_back(s);
            rec.axes.push_back(next.axis);
            rec.noises.push_back(next.dW);
            rec.purities_a.push_back(pa);
            rec.purities_b.push_back(pb);
            if (!rec.positivity_flagged && !physical) {
              rec.positivity_flagged = true;
              rec.first_flagged_step = step + 1;
            }
          }
        }
        states[i] = s;
      }
    };

    if (workers == 1) {
      advance_range(0, n);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
          const std::size_t lo = n * w / workers;
          const std::size_t hi = n * (w + 1) / workers;
          pool.emplace_back([&, w, lo, hi] {
            try {
              advance_range(lo, hi);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
      }
      // Lowest trajectory range first, so the reported error does not
      // depend on scheduling.
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    for (std::size_t b = 0; b < len; ++b) {
      summarize(buf_a.data() + b * n, n, start + b + 1, alice, scratch);
      summarize(buf_b.data() + b * n, n, start + b + 1, bob, scratch);
    }
  }

  stats.flagged_positivity_count =
      static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), 1));
  stats.time_to_target_pb = std::move(hit);
  return result;
}

DeterminismReport determinism_report(std::span<const TrajectoryRecord> records, double dt) {
  DeterminismReport out;
  out.tol_det = 10.0 * dt;
  if (records.empty()) return out;
  const std::size_t rows = records.front().size();
  for (const auto& rec : records) {
    if (rec.size() != rows) throw ValidationError("determinism_report: records differ in length");
  }
  out.times = records.front().times;
  out.spread_a.assign(rows, 0.0);
  out.spread_b.assign(rows, 0.0);
  std::vector<double> column(records.size());
  for (std::size_t t = 0; t < rows; ++t) {
    for (int party = 0; party < 2; ++party) {
      for (std::size_t i = 0; i < records.size(); ++i)
        column[i] = party == 0 ? records[i].purities_a[t] : records[i].purities_b[t];
      const Moments m = moments(column.data(), column.size());
      double spread = 0.0;
      for (double x : column) spread = std::max(spread, std::abs(x - m.mean));
      (party == 0 ? out.spread_a : out.spread_b)[t] = spread;
    }
  }
  out.max_spread_a = *std::max_element(out.spread_a.begin(), out.spread_a.end());
  out.max_spread_b = *std::max_element(out.spread_b.begin(), out.spread_b.end());
  out.deterministic_a = out.max_spread_a <= out.tol_det;
  out.deterministic_b = out.max_spread_b <= out.tol_det;
  return out;
}

DeterminismReport determinism_report(const EnsembleStats& stats, double dt) {
  DeterminismReport out;
  out.tol_det = 10.0 * dt;
  out.times = stats.times;
  const std::size_t rows = stats.size();
  out.spread_a.resize(rows);
  out.spread_b.resize(rows);
  for (std::size_t t = 0; t < rows; ++t) {
    out.spread_a[t] = std::max(stats.max_pa[t] - stats.mean_pa[t], stats.mean_pa[t] - stats.min_pa[t]);
    out.spread_b[t] = std::max(stats.max_pb[t] - stats.mean_pb[t], stats.mean_pb[t] - stats.min_pb[t]);
    out.spread_a[t] = std::max(out.spread_a[t], 0.0);
    out.spread_b[t] = std::max(out.spread_b[t], 0.0);
  }
  if (rows > 0) {
    out.max_spread_a = *std::max_element(out.spread_a.begin(), out.spread_a.end());
    out.max_spread_b = *std::max_element(out.spread_b.begin(), out.spread_b.end());
  }
  out.deterministic_a = out.max_spread_a <= out.tol_det;
  out.deterministic_b = out.max_spread_b <= out.tol_det;
  return out;
}

}  // namespace biparity
