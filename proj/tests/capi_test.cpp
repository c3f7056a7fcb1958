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

// Exercises the shared library through the C header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "spinbath/spinbath.h"

namespace {

constexpr double kHalf = 0.70710678118654752;

sb_model* sampled(size_t n, uint64_t seed) {
  sb_model* m = nullptr;
  const sb_complex a{kHalf, 0.0};
  REQUIRE(sb_model_sample(n, seed, "uniform", "uniform", a, a, &m) == SB_OK);
  return m;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(sb_version()) == "spinbath 0.1.0");
  CHECK(std::string(sb_status_name(SB_ERR_RESOURCE_CAP)) == "resource cap");
  CHECK(std::string(sb_command_names()).find("simulate-r") != std::string::npos);
}

TEST_CASE("model lifecycle and errors") {
  const sb_site sites[2] = {{{0.6, 0}, {0, 0.8}, 1.0}, {{1, 0}, {0, 0}, 2.0}};
  sb_model* m = nullptr;
  REQUIRE(sb_model_create({1, 0}, {0, 0}, sites, 2, 0, &m) == SB_OK);
  CHECK(sb_model_site_count(m) == 2);
  CHECK(sb_model_mean_coupling(m) == 1.5);
  sb_site s{};
  CHECK(sb_model_site(m, 1, &s) == SB_OK);
  CHECK(s.beta.im == 0.8);
  CHECK(sb_model_site(m, 0, &s) == SB_ERR_OUT_OF_RANGE);
  CHECK(sb_model_site(m, 3, &s) == SB_ERR_OUT_OF_RANGE);
  CHECK(std::strlen(sb_last_error()) > 0);

  sb_model* bad = nullptr;
  CHECK(sb_model_create({1, 0}, {1, 0}, sites, 2, 0, &bad) == SB_ERR_NOT_NORMALIZED);
  CHECK(bad == nullptr);
  CHECK(sb_model_create({1, 0}, {1, 0}, sites, 2, 1, &bad) == SB_OK);
  double factors[3] = {};
  CHECK(sb_model_normalization_factors(bad, factors, 2) == SB_ERR_BUFFER_TOO_SMALL);
  CHECK(sb_model_normalization_factors(bad, factors, 3) == SB_OK);
  CHECK(factors[0] == doctest::Approx(kHalf));
  sb_model_destroy(bad);

  CHECK(sb_model_create({1, 0}, {0, 0}, nullptr, 2, 0, &bad) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_model_sample(3, 1, "gaussian", "uniform", {1, 0}, {0, 0}, &bad) ==
        SB_ERR_UNKNOWN_NAME);

  size_t length = 0;
  REQUIRE(sb_model_to_json(m, nullptr, &length) == SB_OK);
  std::vector<char> text(length);
  size_t short_length = 4;
  CHECK(sb_model_to_json(m, text.data(), &short_length) == SB_ERR_BUFFER_TOO_SMALL);
  REQUIRE(sb_model_to_json(m, text.data(), &length) == SB_OK);
  sb_model* copy = nullptr;
  REQUIRE(sb_model_from_json(text.data(), &copy) == SB_OK);
  sb_site t{};
  sb_model_site(copy, 1, &t);
  CHECK(t.alpha.re == 0.6);
  CHECK(t.beta.im == 0.8);
  sb_model_destroy(copy);
  CHECK(sb_model_from_json("{", &copy) == SB_ERR_INVALID_ARGUMENT);

  sb_model_destroy(m);
  sb_model_destroy(nullptr);
}

TEST_CASE("analytic engine matches the dense oracle through the C API") {
  sb_model* m = sampled(6, 11);
  sb_observable* obs = nullptr;
  REQUIRE(sb_observable_sample(6, 11, &obs) == SB_OK);
  sb_dense_state* s0 = nullptr;
  REQUIRE(sb_dense_build(m, 0, &s0) == SB_OK);
  CHECK(sb_dense_length(s0) == 128);

  for (double t : {0.0, 2.0, 17.5}) {
    sb_dense_state* st = nullptr;
    REQUIRE(sb_dense_evolve(s0, m, t, &st) == SB_OK);
    double fast = 0, slow = 0;
    REQUIRE(sb_expectation(m, obs, t, &fast) == SB_OK);
    REQUIRE(sb_dense_expectation(st, obs, &slow) == SB_OK);
    CHECK(std::abs(fast - slow) <= 1e-10);

    sb_complex r{}, rr{};
    int underflow = -1;
    REQUIRE(sb_overlap_r(m, t, &r, &underflow) == SB_OK);
    CHECK(underflow == 0);
    REQUIRE(sb_dense_overlap(m, t, 0, &rr) == SB_OK);
    CHECK(std::hypot(r.re - rr.re, r.im - rr.im) <= 1e-10);

    sb_reduced_state a{}, b{};
    REQUIRE(sb_reduced_system_state(m, t, &a) == SB_OK);
    REQUIRE(sb_dense_partial_trace(st, &b) == SB_OK);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::hypot(a.rho[k].re - b.rho[k].re, a.rho[k].im - b.rho[k].im) <= 1e-10);
    }
    sb_dense_destroy(st);
  }

  std::vector<sb_complex> amps(127);
  CHECK(sb_dense_amplitudes(s0, amps.data(), amps.size()) == SB_ERR_BUFFER_TOO_SMALL);
  amps.resize(128);
  CHECK(sb_dense_amplitudes(s0, amps.data(), amps.size()) == SB_OK);

  sb_dense_state* capped = nullptr;
  CHECK(sb_dense_build(m, 5, &capped) == SB_ERR_RESOURCE_CAP);

  double lo = 0, hi = 0;
  REQUIRE(sb_r_squared_bounds(m, &lo, &hi) == SB_OK);
  CHECK(lo >= 0.0);
  CHECK(hi == 1.0);

  sb_dense_destroy(s0);
  sb_observable_destroy(obs);
  sb_model_destroy(m);
}

TEST_CASE("observables") {
  sb_observable* o = nullptr;
  const sb_matrix2 sz{{{1, 0}, {0, 0}, {0, 0}, {-1, 0}}};
  const sb_matrix2 skew{{{1, 0}, {1, 0}, {0, 0}, {1, 0}}};
  CHECK(sb_observable_single_site(2, sz, 3, &o) == SB_OK);
  sb_observable_destroy(o);
  CHECK(sb_observable_single_site(4, sz, 3, &o) == SB_ERR_OUT_OF_RANGE);
  CHECK(sb_observable_create(skew, &sz, 1, &o) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_observable_parse("eid:1,0,0,-1", "", 3, &o) == SB_OK);
  sb_observable_destroy(o);
  CHECK(sb_observable_parse("tensor:1", "", 3, &o) == SB_ERR_UNKNOWN_NAME);

  sb_model* m = sampled(3, 2);
  double g0 = 0;
  REQUIRE(sb_observable_eid(1, {0, 0}, -1, 4, &o) == SB_OK);
  CHECK(sb_gamma0(m, o, 1.0, &g0) == SB_ERR_SIZE_MISMATCH);
  sb_observable_destroy(o);

  double v = 0;
  CHECK(sb_single_spin_expectation(m, 1, sz, 0.0, &v) == SB_OK);
  CHECK(std::abs(v) <= 1.0);
  sb_model_destroy(m);
}

TEST_CASE("analysis entry points") {
  const double tau[3] = {0.0, 1.0, 2.0};
  const sb_complex values[3] = {{1, 0}, {0.01, 0}, {0.0, 0.0}};
  sb_verdict v{};
  REQUIRE(sb_decoherence_time(tau, values, 3, 0.1, 1.0, &v) == SB_OK);
  CHECK(v.decohered == 1);
  CHECK(v.t_d == 1.0);
  CHECK(sb_decoherence_time(tau, values, 3, 0.1, 5.0, &v) == SB_ERR_INVALID_ARGUMENT);

  double seconds = 0;
  REQUIRE(sb_timescale_estimate(1.0, &seconds) == SB_OK);
  CHECK(seconds == doctest::Approx(6.582119569e-16));
  sb_timescale_report report{};
  REQUIRE(sb_timescale_compare(1e23, 1.0, &report) == SB_OK);
  CHECK(report.hierarchy_ok == 1);

  sb_model* comm = nullptr;
  const sb_complex a{kHalf, 0.0};
  REQUIRE(sb_model_sample(5, 1, "uniform", "commensurate:1", a, a, &comm) == SB_OK);
  double revival = 0;
  REQUIRE(sb_recurrence_check(comm, 2 * 3.14159265358979323846, &revival) == SB_OK);
  CHECK(std::abs(revival - 1.0) <= 1e-10);
  CHECK(sb_recurrence_check(comm, 1.0, &revival) == SB_ERR_INVALID_ARGUMENT);

  double mean = 0, predicted = 0;
  REQUIRE(sb_fluctuation_stats(comm, 0.0, 100.0, 1000, 3, &mean, &predicted) == SB_OK);
  CHECK(predicted > 0.0);

  sb_observable* sx = nullptr;
  REQUIRE(sb_observable_eid(0, {1, 0}, 0, 5, &sx) == SB_OK);
  double residual = -1;
  REQUIRE(sb_weak_limit_residual(comm, sx, 0.0, &residual) == SB_OK);
  CHECK(residual == doctest::Approx(1.0));
  sb_observable_destroy(sx);
  sb_model_destroy(comm);
}

TEST_CASE("sb_run") {
  const auto dir = std::filesystem::temp_directory_path() / "spinbath_capi_run";
  std::filesystem::remove_all(dir);
  CHECK(sb_run(R"({"command":"timescale"})", dir.string().c_str()) == 0);
  CHECK(std::filesystem::exists(dir / "timescale.json"));
  CHECK(sb_run("not json", dir.string().c_str()) == 1);
  CHECK(sb_run(R"({"command":"oracle-check","n":40})", dir.string().c_str()) == 2);
  CHECK(sb_run(nullptr, dir.string().c_str()) == 1);
}
