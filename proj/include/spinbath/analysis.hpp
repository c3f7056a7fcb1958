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

#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "spinbath/model.hpp"

// Decoherence diagnostics built on the analytic engine.
//
// Two time conventions meet here. Trajectories, windows and sweeps use reduced
// time tau = mean_coupling * t (the "1/g-bar" unit). Pointwise helpers
// (recurrence_check, weak_limit_residual) take raw time t like the engine.

namespace spinbath {

inline constexpr double kHbarEvSeconds = 6.582119569e-16;
inline constexpr double kNotDecohered = std::numeric_limits<double>::infinity();

/// points samples evenly spaced on [0, t_max], both ends included.
std::vector<double> uniform_grid(double t_max, std::size_t points);

/// r(tau / g-bar) sampled on the reduced-time grid tau.
Trajectory overlap_trajectory(const SpinBathModel& model, std::span<const double> tau);

/// <O>(tau / g-bar) sampled on the reduced-time grid tau (imaginary parts zero).
Trajectory expectation_trajectory(const SpinBathModel& model,
                                  const RelevantObservable& obs,
                                  std::span<const double> tau);

struct DecoherenceVerdict {
  double t_d = kNotDecohered;
  double theta = 0.0;
  double window = 0.0;
  double sup_late = 0.0;
  bool decohered = false;
};

/// Threshold-and-hold decoherence time on |value|. t_D is the earliest grid
/// time after which every sample stays <= theta, provided at least `window`
/// of trajectory remains. sup_late is max |value| on [t_D, end], or on the
/// final window when the trajectory never settles. Requires a trajectory
/// span of at least 2 * window and theta in (0, 1).
DecoherenceVerdict decoherence_time(const Trajectory& traj, double theta, double window);

/// max |value| over samples with begin <= time <= end.
double window_sup(const Trajectory& traj, double begin, double end);

struct FluctuationStats {
  double mean_r2 = 0.0;
  double predicted_r2 = 0.0;
};

/// Average of |r|^2 over `samples` uniform random reduced times in
/// [tau_begin, tau_end], against prod_i (|alpha_i|^4 + |beta_i|^4).
FluctuationStats fluctuation_stats(const SpinBathModel& model, double tau_begin,
                                   double tau_end, std::size_t samples,
                                   std::uint64_t seed);

/// True when every g_i * period / (2 pi) is an integer to relative 1e-9.
bool is_commensurate(const SpinBathModel& model, double period);

/// |r(period)| for a commensurate model; throws otherwise.
double recurrence_check(const SpinBathModel& model, double period);

/// |<O>(t) - (|a|^2 s00 + |b|^2 s11)| for a system-only observable.
double weak_limit_residual(const SpinBathModel& model, const RelevantObservable& obs,
                           double t);

/// hbar / V in seconds for an interaction strength V in eV.
double timescale_estimate(double v_ev);

struct TimescaleReport {
  double v1_ev = 0.0;
  double v2_ev = 0.0;
  double t_ds_s = 0.0;
  double t_du_s = 0.0;
  bool hierarchy_ok = false;
};

/// t_DS from the system-environment strength v1, t_DU from the
/// intra-environment strength v2.
TimescaleReport timescale_report(double v1_ev, double v2_ev);

struct SweepSettings {
  std::size_t seeds = 5;
  double theta = 0.1;
  double window = 20.0;
  double t_max = 100.0;
  std::size_t points = 2000;
  std::string coeff_dist = "uniform";
  std::string g_dist = "uniform";
  Complex a{1.0 / std::numbers::sqrt2, 0.0};
  Complex b{1.0 / std::numbers::sqrt2, 0.0};
};

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  DecoherenceVerdict verdict;
};

struct SweepSummary {
  std::size_t n = 0;
  double median_sup_late = 0.0;
  std::size_t decohered = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
  /// Median sup_late strictly decreases along n_list.
  bool median_decreasing = false;
};

/// For each N, decoherence verdicts of |r| for models seeded seed, seed+1, ...
/// Rows are ordered by (position in n_list, seed).
SweepResult n_scaling_sweep(std::span<const std::size_t> n_list, std::uint64_t seed,
                            const SweepSettings& settings);

double median(std::vector<double> values);

}  // namespace spinbath
