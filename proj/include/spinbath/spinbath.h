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

/*
 * C interface to the spinbath library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an sb_status; on
 * failure, sb_last_error() describes the problem for the calling thread.
 * Handles are immutable after creation and may be shared between threads.
 *
 * Time arguments are raw times (hbar = 1, couplings are angular
 * frequencies) unless a parameter is named tau, which is measured in units of
 * 1 / mean coupling.
 */
#ifndef SPINBATH_SPINBATH_H_
#define SPINBATH_SPINBATH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SPINBATH_BUILDING)
#define SB_API __declspec(dllexport)
#else
#define SB_API __declspec(dllimport)
#endif
#else
#define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1,
  SB_ERR_NOT_NORMALIZED = 2,
  SB_ERR_SIZE_MISMATCH = 3,
  SB_ERR_OUT_OF_RANGE = 4,
  SB_ERR_RESOURCE_CAP = 5,
  SB_ERR_IO = 6,
  SB_ERR_UNKNOWN_NAME = 7,
  SB_ERR_NUMERICAL = 8,
  SB_ERR_BUFFER_TOO_SMALL = 9,
  SB_ERR_INTERNAL = 10
} sb_status;

typedef struct sb_complex {
  double re;
  double im;
} sb_complex;

/* One environment spin: amplitudes on |up>, |down> and coupling g > 0. */
typedef struct sb_site {
  sb_complex alpha;
  sb_complex beta;
  double g;
} sb_site;

/* 2x2 matrix, row-major: m[0] = <0|M|0>, m[1] = <0|M|1>, m[2] = <1|M|0>,
 * m[3] = <1|M|1>. For bath sites 0 = up, 1 = down. */
typedef struct sb_matrix2 {
  sb_complex m[4];
} sb_matrix2;

typedef struct sb_reduced_state {
  sb_complex rho[4];
} sb_reduced_state;

typedef struct sb_verdict {
  double t_d; /* +inf when not decohered */
  double theta;
  double window;
  double sup_late;
  int decohered;
} sb_verdict;

typedef struct sb_timescale_report {
  double v1_ev;
  double v2_ev;
  double t_ds_s;
  double t_du_s;
  int hierarchy_ok;
} sb_timescale_report;

typedef struct sb_model sb_model;
typedef struct sb_observable sb_observable;
typedef struct sb_dense_state sb_dense_state;

SB_API const char* sb_version(void);
SB_API const char* sb_last_error(void);
SB_API const char* sb_status_name(sb_status status);

/* ---- model ------------------------------------------------------------ */

/* lenient != 0 renormalizes instead of rejecting unnormalized amplitudes. */
SB_API sb_status sb_model_create(sb_complex a, sb_complex b, const sb_site* sites,
                                 size_t n, int lenient, sb_model** out);
SB_API sb_status sb_model_sample(size_t n, uint64_t seed, const char* coeff_dist,
                                 const char* g_dist, sb_complex a, sb_complex b,
                                 sb_model** out);
SB_API void sb_model_destroy(sb_model* model);
SB_API size_t sb_model_site_count(const sb_model* model);
SB_API sb_status sb_model_amplitudes(const sb_model* model, sb_complex* a, sb_complex* b);
/* j is 1-based. */
SB_API sb_status sb_model_site(const sb_model* model, size_t j, sb_site* out);
SB_API double sb_model_mean_coupling(const sb_model* model);
/* Lenient-mode factors: index 0 for (a, b), index i for site i; n + 1 slots. */
SB_API sb_status sb_model_normalization_factors(const sb_model* model, double* out,
                                                size_t capacity);

/* JSON round trip. *length receives the byte count including the trailing
 * NUL; pass buffer = NULL to query it. */
SB_API sb_status sb_model_to_json(const sb_model* model, char* buffer, size_t* length);
SB_API sb_status sb_model_from_json(const char* json, sb_model** out);

/* ---- observables -------------------------------------------------------- */

SB_API sb_status sb_observable_create(sb_matrix2 system_part, const sb_matrix2* site_parts,
                                      size_t n, sb_observable** out);
SB_API sb_status sb_observable_eid(double s00, sb_complex s01, double s11, size_t n,
                                   sb_observable** out);
SB_API sb_status sb_observable_single_site(size_t j, sb_matrix2 eps, size_t n,
                                           sb_observable** out);
SB_API sb_status sb_observable_sample(size_t n, uint64_t seed, sb_observable** out);
/* Observable spec grammar: eid:... | single-site:<j>[:<eps>] | random:<seed>. */
SB_API sb_status sb_observable_parse(const char* spec, const char* eps, size_t n,
                                     sb_observable** out);
SB_API void sb_observable_destroy(sb_observable* obs);

/* ---- analytic engine ----------------------------------------------------- */

SB_API sb_status sb_gamma0(const sb_model* model, const sb_observable* obs, double t,
                           double* out);
SB_API sb_status sb_gamma1(const sb_model* model, const sb_observable* obs, double t,
                           sb_complex* out);
SB_API sb_status sb_expectation(const sb_model* model, const sb_observable* obs, double t,
                                double* out);
/* underflow (may be NULL) is set to 1 when |r| fell below e^-700. */
SB_API sb_status sb_overlap_r(const sb_model* model, double t, sb_complex* out,
                              int* underflow);
SB_API sb_status sb_r_squared_bounds(const sb_model* model, double* lower, double* upper);
SB_API sb_status sb_single_spin_expectation(const sb_model* model, size_t j, sb_matrix2 eps,
                                            double t, double* out);
SB_API sb_status sb_reduced_system_state(const sb_model* model, double t, sb_reduced_state* out);

/* ---- dense oracle -------------------------------------------------------- */

/* site_cap = 0 selects the default cap of 24 sites. */
SB_API sb_status sb_dense_build(const sb_model* model, size_t site_cap,
                                sb_dense_state** out);
SB_API sb_status sb_dense_evolve(const sb_dense_state* state, const sb_model* model,
                                 double t, sb_dense_state** out);
SB_API void sb_dense_destroy(sb_dense_state* state);
SB_API size_t sb_dense_length(const sb_dense_state* state);
SB_API sb_status sb_dense_amplitudes(const sb_dense_state* state, sb_complex* out,
                                     size_t capacity);
SB_API sb_status sb_dense_expectation(const sb_dense_state* state, const sb_observable* obs,
                                      double* out);
SB_API sb_status sb_dense_overlap(const sb_model* model, double t, size_t site_cap,
                                  sb_complex* out);
SB_API sb_status sb_dense_partial_trace(const sb_dense_state* state, sb_reduced_state* out);

/* ---- analysis ------------------------------------------------------------ */

SB_API sb_status sb_decoherence_time(const double* tau, const sb_complex* values, size_t n,
                                     double theta, double window, sb_verdict* out);
SB_API sb_status sb_fluctuation_stats(const sb_model* model, double tau_begin,
                                      double tau_end, size_t samples, uint64_t seed,
                                      double* mean_r2, double* predicted_r2);
SB_API sb_status sb_recurrence_check(const sb_model* model, double period, double* out);
SB_API sb_status sb_weak_limit_residual(const sb_model* model, const sb_observable* obs,
                                        double t, double* out);
SB_API sb_status sb_timescale_estimate(double v_ev, double* seconds);
SB_API sb_status sb_timescale_compare(double v1_ev, double v2_ev, sb_timescale_report* out);

/* ---- experiment runner --------------------------------------------------- */

/* Runs the JSON experiment config and writes outputs below out_dir. Returns
 * the process exit status: 0 ok, 1 invalid config, 2 resource cap, 3 I/O,
 * 4 check failed. Details via sb_last_error(). */
SB_API int sb_run(const char* config_json, const char* out_dir);

/* Comma-separated list of runnable commands (static storage). */
SB_API const char* sb_command_names(void);

#ifdef __cplusplus
}
#endif

#endif /* SPINBATH_SPINBATH_H_ */
