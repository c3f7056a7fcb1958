// Copyright 2026 The spinbath Authors
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

#include "spinbath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "spinbath/analytic.hpp"
#include "spinbath/ensemble.hpp"
#include "spinbath/error.hpp"
#include "spinbath/stable_product.hpp"

namespace spinbath {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  require(points >= 2, "time grid needs at least 2 points");
  require(std::isfinite(t_max) && t_max > 0.0, "time grid needs t_max > 0");
  std::vector<double> grid(points);
  const double step = t_max / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = step * static_cast<double>(k);
  grid.back() = t_max;
  return grid;
}

Trajectory overlap_trajectory(const SpinBathModel& model, std::span<const double> tau) {
  Trajectory traj;
  traj.label = "r";
  traj.times.assign(tau.begin(), tau.end());
  traj.values.reserve(tau.size());
  const double unit = model.mean_coupling();
  for (double x : tau) traj.values.push_back(overlap_r(model, x / unit));
  traj.validate();
  return traj;
}

Trajectory expectation_trajectory(const SpinBathModel& model,
                                  const RelevantObservable& obs,
                                  std::span<const double> tau) {
  Trajectory traj;
  traj.label = "expectation";
  traj.times.assign(tau.begin(), tau.end());
  traj.values.reserve(tau.size());
  const double unit = model.mean_coupling();
  for (double x : tau) traj.values.emplace_back(expectation(model, obs, x / unit), 0.0);
  traj.validate();
  return traj;
}

double window_sup(const Trajectory& traj, double begin, double end) {
  double sup = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] >= begin && traj.times[k] <= end) {
      sup = std::max(sup, std::abs(traj.values[k]));
    }
  }
  return sup;
}

DecoherenceVerdict decoherence_time(const Trajectory& traj, double theta, double window) {
  traj.validate();
  require(theta > 0.0 && theta < 1.0, "threshold must lie in (0, 1)");
  require(window > 0.0, "hold window must be positive");
  require(traj.times.size() >= 2 && traj.times.back() - traj.times.front() >= 2.0 * window,
          "hold window exceeds trajectory span");

  DecoherenceVerdict verdict;
  verdict.theta = theta;
  verdict.window = window;

  std::size_t first_quiet = 0;
  for (std::size_t k = traj.values.size(); k-- > 0;) {
    if (std::abs(traj.values[k]) > theta) {
      first_quiet = k + 1;
      break;
    }
  }
  const double end = traj.times.back();
  if (first_quiet < traj.times.size() && end - traj.times[first_quiet] >= window) {
    verdict.t_d = traj.times[first_quiet];
    verdict.sup_late = window_sup(traj, verdict.t_d, end);
    verdict.decohered = true;
  } else {
    verdict.sup_late = window_sup(traj, end - window, end);
  }
  return verdict;
}

FluctuationStats fluctuation_stats(const SpinBathModel& model, double tau_begin,
                                   double tau_end, std::size_t samples,
                                   std::uint64_t seed) {
  require(std::isfinite(tau_begin) && std::isfinite(tau_end) && tau_end > tau_begin,
          "fluctuation window is degenerate");
  require(samples >= 100, "fluctuation_stats needs at least 100 samples");

  auto rng = SplitMix64::stream(seed, static_cast<std::uint32_t>(StreamDomain::kSampleTimes), 0);
  const double unit = model.mean_coupling();
  double sum = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double tau = tau_begin + (tau_end - tau_begin) * rng.uniform();
    sum += overlap_r_squared(model, tau / unit);
  }

  ComplexProduct predicted(model.size());
  for (const Site& s : model.sites()) {
    const double p = std::norm(s.alpha);
    const double q = std::norm(s.beta);
    predicted.multiply(p * p + q * q);
  }
  return {sum / static_cast<double>(samples), predicted.result().value.real()};
}

bool is_commensurate(const SpinBathModel& model, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) return false;
  for (const Site& s : model.sites()) {
    const double cycles = s.g * period / kTwoPi;
    const double nearest = std::round(cycles);
    if (nearest < 1.0 || std::abs(cycles - nearest) > 1e-9 * std::max(1.0, cycles)) {
      return false;
    }
  }
  return true;
}

double recurrence_check(const SpinBathModel& model, double period) {
  if (!is_commensurate(model, period)) {
    throw Error(ErrorCode::kInvalidArgument,
                "couplings are not integer multiples of 2 pi / period");
  }
  return std::abs(overlap_r(model, period));
}

double weak_limit_residual(const SpinBathModel& model, const RelevantObservable& obs,
                           double t) {
  require(obs.is_system_only(), "weak_limit_residual needs a system-only observable");
  const Matrix2& s = obs.system_part();
  const double limit =
      std::norm(model.a()) * s.m00.real() + std::norm(model.b()) * s.m11.real();
  return std::abs(expectation(model, obs, t) - limit);
}

double timescale_estimate(double v_ev) {
  require(std::isfinite(v_ev) && v_ev > 0.0, "interaction strength must be positive");
  return kHbarEvSeconds / v_ev;
}

TimescaleReport timescale_report(double v1_ev, double v2_ev) {
  TimescaleReport report;
  report.v1_ev = v1_ev;
  report.v2_ev = v2_ev;
  report.t_ds_s = timescale_estimate(v1_ev);
  report.t_du_s = timescale_estimate(v2_ev);
  report.hierarchy_ok = !(v1_ev > v2_ev) || report.t_ds_s < report.t_du_s;
  return report;
}

double median(std::vector<double> values) {
  require(!values.empty(), "median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

SweepResult n_scaling_sweep(std::span<const std::size_t> n_list, std::uint64_t seed,
                            const SweepSettings& settings) {
  require(!n_list.empty(), "N list is empty");
  require(settings.seeds >= 1, "sweep needs at least one seed");
  const auto grid = uniform_grid(settings.t_max, settings.points);

  SweepResult result;
  result.rows.resize(n_list.size() * settings.seeds);
  std::vector<std::future<void>> cells;
  cells.reserve(result.rows.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    for (std::size_t k = 0; k < settings.seeds; ++k) {
      SweepRow& row = result.rows[i * settings.seeds + k];
      row.n = n_list[i];
      row.seed = seed + k;
      cells.push_back(std::async(std::launch::async, [&row, &grid, &settings] {
        const auto model = sample_model(row.n, row.seed, settings.coeff_dist,
                                        settings.g_dist, settings.a, settings.b);
        row.verdict = decoherence_time(overlap_trajectory(model, grid), settings.theta,
                                       settings.window);
      }));
    }
  }
  for (auto& cell : cells) cell.get();

  for (std::size_t i = 0; i < n_list.size(); ++i) {
    SweepSummary summary;
    summary.n = n_list[i];
    std::vector<double> sups;
    for (std::size_t k = 0; k < settings.seeds; ++k) {
      const auto& verdict = result.rows[i * settings.seeds + k].verdict;
      sups.push_back(verdict.sup_late);
      summary.decohered += verdict.decohered ? 1 : 0;
    }
    summary.median_sup_late = median(std::move(sups));
    result.summary.push_back(summary);
  }
  result.median_decreasing = true;
  for (std::size_t i = 1; i < result.summary.size(); ++i) {
    if (!(result.summary[i].median_sup_late < result.summary[i - 1].median_sup_late)) {
      result.median_decreasing = false;
    }
  }
  return result;
}

}  // namespace spinbath
