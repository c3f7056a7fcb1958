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

#include "spinbath/spinbath.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "spinbath/analysis.hpp"
#include "spinbath/analytic.hpp"
#include "spinbath/dense_oracle.hpp"
#include "spinbath/ensemble.hpp"
#include "spinbath/error.hpp"
#include "spinbath/runner.hpp"

using spinbath::Complex;
using spinbath::Matrix2;

struct sb_model {
  spinbath::SpinBathModel model;
};

struct sb_observable {
  spinbath::RelevantObservable obs;
};

struct sb_dense_state {
  spinbath::oracle::DenseState state;
};

namespace {

thread_local std::string last_error;

sb_status fail(sb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
sb_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return SB_OK;
  } catch (const spinbath::Error& e) {
    return fail(static_cast<sb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SB_ERR_RESOURCE_CAP, "out of memory");
  } catch (const std::exception& e) {
    return fail(SB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SB_ERR_INTERNAL, "unknown error");
  }
}

void require_non_null(const void* p, const char* name) {
  if (p == nullptr) {
    throw spinbath::Error(spinbath::ErrorCode::kInvalidArgument,
                          std::string(name) + " must not be NULL");
  }
}

Complex to_cpp(sb_complex z) { return {z.re, z.im}; }
sb_complex to_c(Complex z) { return {z.real(), z.imag()}; }

Matrix2 to_cpp(const sb_matrix2& m) {
  return {to_cpp(m.m[0]), to_cpp(m.m[1]), to_cpp(m.m[2]), to_cpp(m.m[3])};
}

sb_reduced_state to_c(const spinbath::ReducedState& r) {
  return {{to_c(r.rho00), to_c(r.rho01), to_c(r.rho10), to_c(r.rho11)}};
}

std::size_t cap_or_default(std::size_t cap) {
  return cap == 0 ? spinbath::oracle::kDefaultSiteCap : cap;
}

}  // namespace

extern "C" {

const char* sb_version(void) { return spinbath::kVersion.data(); }

const char* sb_last_error(void) { return last_error.c_str(); }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "ok";
    case SB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SB_ERR_NOT_NORMALIZED: return "not normalized";
    case SB_ERR_SIZE_MISMATCH: return "size mismatch";
    case SB_ERR_OUT_OF_RANGE: return "out of range";
    case SB_ERR_RESOURCE_CAP: return "resource cap";
    case SB_ERR_IO: return "i/o failure";
    case SB_ERR_UNKNOWN_NAME: return "unknown name";
    case SB_ERR_NUMERICAL: return "numerical failure";
    case SB_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sb_status sb_model_create(sb_complex a, sb_complex b, const sb_site* sites, size_t n,
                          int lenient, sb_model** out) {
  return guarded([&] {
    require_non_null(out, "out");
    require_non_null(sites, "sites");
    std::vector<spinbath::Site> cpp(n);
    for (size_t i = 0; i < n; ++i) {
      cpp[i] = {to_cpp(sites[i].alpha), to_cpp(sites[i].beta), sites[i].g};
    }
    auto mode = lenient ? spinbath::Normalization::kLenient : spinbath::Normalization::kStrict;
    *out = new sb_model{spinbath::make_model(to_cpp(a), to_cpp(b), std::move(cpp), mode)};
  });
}

sb_status sb_model_sample(size_t n, uint64_t seed, const char* coeff_dist,
                          const char* g_dist, sb_complex a, sb_complex b, sb_model** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new sb_model{spinbath::sample_model(n, seed, coeff_dist ? coeff_dist : "uniform",
                                               g_dist ? g_dist : "uniform", to_cpp(a),
                                               to_cpp(b))};
  });
}

void sb_model_destroy(sb_model* model) { delete model; }

size_t sb_model_site_count(const sb_model* model) { return model ? model->model.size() : 0; }

sb_status sb_model_amplitudes(const sb_model* model, sb_complex* a, sb_complex* b) {
  return guarded([&] {
    require_non_null(model, "model");
    if (a) *a = to_c(model->model.a());
    if (b) *b = to_c(model->model.b());
  });
}

sb_status sb_model_site(const sb_model* model, size_t j, sb_site* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    const auto& s = model->model.site(spinbath::SiteIndex{j});
    *out = {to_c(s.alpha), to_c(s.beta), s.g};
  });
}

double sb_model_mean_coupling(const sb_model* model) {
  return model ? model->model.mean_coupling() : std::numeric_limits<double>::quiet_NaN();
}

sb_status sb_model_normalization_factors(const sb_model* model, double* out,
                                         size_t capacity) {
  if (model != nullptr && capacity < model->model.size() + 1) {
    return fail(SB_ERR_BUFFER_TOO_SMALL, "need N + 1 slots");
  }
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    const auto factors = model->model.normalization_factors();
    std::copy(factors.begin(), factors.end(), out);
  });
}

sb_status sb_model_to_json(const sb_model* model, char* buffer, size_t* length) {
  std::string text;
  const sb_status st = guarded([&] {
    require_non_null(model, "model");
    require_non_null(length, "length");
    text = spinbath::model_to_json(model->model).dump();
  });
  if (st != SB_OK) return st;
  const size_t needed = text.size() + 1;
  const size_t capacity = *length;
  *length = needed;
  if (buffer == nullptr) return SB_OK;
  if (capacity < needed) return fail(SB_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buffer, text.c_str(), needed);
  return SB_OK;
}

sb_status sb_model_from_json(const char* json, sb_model** out) {
  return guarded([&] {
    require_non_null(json, "json");
    require_non_null(out, "out");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw spinbath::Error(spinbath::ErrorCode::kInvalidArgument, e.what());
    }
    *out = new sb_model{spinbath::model_from_json(doc)};
  });
}

sb_status sb_observable_create(sb_matrix2 system_part, const sb_matrix2* site_parts,
                               size_t n, sb_observable** out) {
  return guarded([&] {
    require_non_null(out, "out");
    require_non_null(site_parts, "site_parts");
    std::vector<Matrix2> parts;
    parts.reserve(n);
    for (size_t i = 0; i < n; ++i) parts.push_back(to_cpp(site_parts[i]));
    *out = new sb_observable{spinbath::RelevantObservable(to_cpp(system_part), std::move(parts))};
  });
}

sb_status sb_observable_eid(double s00, sb_complex s01, double s11, size_t n,
                            sb_observable** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new sb_observable{spinbath::eid_observable(s00, to_cpp(s01), s11, n)};
  });
}

sb_status sb_observable_single_site(size_t j, sb_matrix2 eps, size_t n, sb_observable** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new sb_observable{
        spinbath::single_site_observable(spinbath::SiteIndex{j}, to_cpp(eps), n)};
  });
}

sb_status sb_observable_sample(size_t n, uint64_t seed, sb_observable** out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = new sb_observable{spinbath::sample_observable(n, seed)};
  });
}

sb_status sb_observable_parse(const char* spec, const char* eps, size_t n,
                              sb_observable** out) {
  return guarded([&] {
    require_non_null(spec, "spec");
    require_non_null(out, "out");
    *out = new sb_observable{spinbath::parse_observable(spec, eps ? eps : "", n)};
  });
}

void sb_observable_destroy(sb_observable* obs) { delete obs; }

sb_status sb_gamma0(const sb_model* model, const sb_observable* obs, double t, double* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(obs, "obs");
    require_non_null(out, "out");
    *out = spinbath::gamma0(model->model, obs->obs, t);
  });
}

sb_status sb_gamma1(const sb_model* model, const sb_observable* obs, double t,
                    sb_complex* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(obs, "obs");
    require_non_null(out, "out");
    *out = to_c(spinbath::gamma1(model->model, obs->obs, t));
  });
}

sb_status sb_expectation(const sb_model* model, const sb_observable* obs, double t,
                         double* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(obs, "obs");
    require_non_null(out, "out");
    *out = spinbath::expectation(model->model, obs->obs, t);
  });
}

sb_status sb_overlap_r(const sb_model* model, double t, sb_complex* out, int* underflow) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    const auto r = spinbath::overlap_r_product(model->model, t);
    *out = to_c(r.value);
    if (underflow) *underflow = r.underflow ? 1 : 0;
  });
}

sb_status sb_r_squared_bounds(const sb_model* model, double* lower, double* upper) {
  return guarded([&] {
    require_non_null(model, "model");
    const auto [lo, hi] = spinbath::r_squared_bounds(model->model);
    if (lower) *lower = lo;
    if (upper) *upper = hi;
  });
}

sb_status sb_single_spin_expectation(const sb_model* model, size_t j, sb_matrix2 eps,
                                     double t, double* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = spinbath::single_spin_expectation(model->model, spinbath::SiteIndex{j},
                                             to_cpp(eps), t);
  });
}

sb_status sb_reduced_system_state(const sb_model* model, double t, sb_reduced_state* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = to_c(spinbath::reduced_system_state(model->model, t));
  });
}

sb_status sb_dense_build(const sb_model* model, size_t site_cap, sb_dense_state** out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = new sb_dense_state{
        spinbath::oracle::build_initial(model->model, cap_or_default(site_cap))};
  });
}

sb_status sb_dense_evolve(const sb_dense_state* state, const sb_model* model, double t,
                          sb_dense_state** out) {
  return guarded([&] {
    require_non_null(state, "state");
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = new sb_dense_state{spinbath::oracle::evolve(state->state, model->model, t)};
  });
}

void sb_dense_destroy(sb_dense_state* state) { delete state; }

size_t sb_dense_length(const sb_dense_state* state) {
  return state ? state->state.amplitudes().size() : 0;
}

sb_status sb_dense_amplitudes(const sb_dense_state* state, sb_complex* out, size_t capacity) {
  if (state != nullptr && capacity < state->state.amplitudes().size()) {
    return fail(SB_ERR_BUFFER_TOO_SMALL, "need 2^(N+1) slots");
  }
  return guarded([&] {
    require_non_null(state, "state");
    require_non_null(out, "out");
    const auto amps = state->state.amplitudes();
    for (size_t k = 0; k < amps.size(); ++k) out[k] = to_c(amps[k]);
  });
}

sb_status sb_dense_expectation(const sb_dense_state* state, const sb_observable* obs,
                               double* out) {
  return guarded([&] {
    require_non_null(state, "state");
    require_non_null(obs, "obs");
    require_non_null(out, "out");
    *out = spinbath::oracle::oracle_expectation(state->state, obs->obs);
  });
}

sb_status sb_dense_overlap(const sb_model* model, double t, size_t site_cap,
                           sb_complex* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = to_c(spinbath::oracle::oracle_overlap(model->model, t, cap_or_default(site_cap)));
  });
}

sb_status sb_dense_partial_trace(const sb_dense_state* state, sb_reduced_state* out) {
  return guarded([&] {
    require_non_null(state, "state");
    require_non_null(out, "out");
    *out = to_c(spinbath::oracle::partial_trace(state->state));
  });
}

sb_status sb_decoherence_time(const double* tau, const sb_complex* values, size_t n,
                              double theta, double window, sb_verdict* out) {
  return guarded([&] {
    require_non_null(tau, "tau");
    require_non_null(values, "values");
    require_non_null(out, "out");
    spinbath::Trajectory traj;
    traj.times.assign(tau, tau + n);
    traj.values.reserve(n);
    for (size_t k = 0; k < n; ++k) traj.values.push_back(to_cpp(values[k]));
    const auto v = spinbath::decoherence_time(traj, theta, window);
    *out = {v.t_d, v.theta, v.window, v.sup_late, v.decohered ? 1 : 0};
  });
}

sb_status sb_fluctuation_stats(const sb_model* model, double tau_begin, double tau_end,
                               size_t samples, uint64_t seed, double* mean_r2,
                               double* predicted_r2) {
  return guarded([&] {
    require_non_null(model, "model");
    const auto stats =
        spinbath::fluctuation_stats(model->model, tau_begin, tau_end, samples, seed);
    if (mean_r2) *mean_r2 = stats.mean_r2;
    if (predicted_r2) *predicted_r2 = stats.predicted_r2;
  });
}

sb_status sb_recurrence_check(const sb_model* model, double period, double* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(out, "out");
    *out = spinbath::recurrence_check(model->model, period);
  });
}

sb_status sb_weak_limit_residual(const sb_model* model, const sb_observable* obs, double t,
                                 double* out) {
  return guarded([&] {
    require_non_null(model, "model");
    require_non_null(obs, "obs");
    require_non_null(out, "out");
    *out = spinbath::weak_limit_residual(model->model, obs->obs, t);
  });
}

sb_status sb_timescale_estimate(double v_ev, double* seconds) {
  return guarded([&] {
    require_non_null(seconds, "seconds");
    *seconds = spinbath::timescale_estimate(v_ev);
  });
}

sb_status sb_timescale_compare(double v1_ev, double v2_ev, sb_timescale_report* out) {
  return guarded([&] {
    require_non_null(out, "out");
    const auto r = spinbath::timescale_report(v1_ev, v2_ev);
    *out = {r.v1_ev, r.v2_ev, r.t_ds_s, r.t_du_s, r.hierarchy_ok ? 1 : 0};
  });
}

int sb_run(const char* config_json, const char* out_dir) {
  if (config_json == nullptr || out_dir == nullptr) {
    last_error = "config and output directory must not be NULL";
    return static_cast<int>(spinbath::ExitStatus::kInvalidConfig);
  }
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("config is not valid JSON: ") + e.what();
    return static_cast<int>(spinbath::ExitStatus::kInvalidConfig);
  }
  const auto result = spinbath::run(config, out_dir);
  last_error = result.message;
  return static_cast<int>(result.status);
}

const char* sb_command_names(void) {
  static const std::string names = [] {
    std::string joined;
    for (const auto& name : spinbath::command_names()) {
      joined += (joined.empty() ? "" : ",") + name;
    }
    return joined;
  }();
  return names.c_str();
}

}  // extern "C"
