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

#include <doctest.h>

#include <cmath>

#include "spinbath/analytic.hpp"
#include "spinbath/dense_oracle.hpp"
#include "spinbath/ensemble.hpp"
#include "spinbath/error.hpp"
#include "test_support.hpp"

using namespace spinbath;
using spinbath::testing::kInvSqrt2;
using spinbath::testing::kPi;
using spinbath::testing::random_model;
using spinbath::testing::uniform_model;

namespace {

bool near(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

RelevantObservable cross_only(std::size_t n) {
  // e_uu = e_dd = 0, e_ud = 1 on every site.
  return RelevantObservable(Matrix2::identity(),
                            std::vector<Matrix2>(n, Matrix2::pauli_x()));
}

}  // namespace

TEST_CASE("gamma0") {
  SUBCASE("identity site parts give 1") {
    const auto model = random_model(6, 11);
    const auto obs = eid_observable(1.0, 0.0, -1.0, 6);
    for (double t : {0.0, 1.0, 77.0}) CHECK(gamma0(model, obs, t) == doctest::Approx(1.0));
  }
  SUBCASE("single cross factor is cos t") {
    const auto model = uniform_model(1, 1.0);
    const auto obs = cross_only(1);
    CHECK(std::abs(gamma0(model, obs, 0.0) - 1.0) <= 1e-12);
    CHECK(std::abs(gamma0(model, obs, kPi / 2)) <= 1e-12);
    CHECK(std::abs(gamma0(model, obs, 0.4) - std::cos(0.4)) <= 1e-12);
  }
  SUBCASE("size mismatch") {
    const auto model = uniform_model(2, 1.0);
    CHECK_THROWS_AS(gamma0(model, cross_only(3), 0.0), Error);
  }
}

TEST_CASE("gamma1") {
  SUBCASE("identity site parts at t = 0") {
    const auto model = random_model(5, 2);
    CHECK(near(gamma1(model, eid_observable(1, 0, 1, 5), 0.0), 1.0, 1e-12));
  }
  SUBCASE("basis site gives e^{i g t}") {
    const auto model = make_model(1.0, 0.0, {{1.0, 0.0, 2.0}});
    CHECK(near(gamma1(model, eid_observable(1, 0, 1, 1), 0.5), std::polar(1.0, 1.0), 1e-15));
  }
  SUBCASE("two equal-superposition sites at t = pi") {
    const auto model = uniform_model(2, 1.0);
    const Complex g1 = gamma1(model, eid_observable(1, 0, 1, 2), kPi);
    CHECK(near(g1, 1.0, 1e-12));
    CHECK(near(g1, oracle::oracle_overlap(model, kPi), 1e-12));
  }
}

TEST_CASE("expectation examples") {
  SUBCASE("ground central spin, sigma_z") {
    const auto model = make_model(1.0, 0.0, {{0.6, 0.8, 0.3}, {kInvSqrt2, kInvSqrt2, 1.0}});
    const auto sz = eid_observable(1, 0, -1, 2);
    for (double t : {0.0, 2.0, 50.0}) CHECK(expectation(model, sz, t) == doctest::Approx(1.0));
  }
  SUBCASE("sigma_x at t = 0") {
    const auto model = uniform_model(1, 1.0);
    const auto sx = eid_observable(0, 1, 0, 1);
    CHECK(std::abs(expectation(model, sx, 0.0) - 1.0) <= 1e-12);
    const auto dense = oracle::build_initial(model);
    CHECK(std::abs(oracle::oracle_expectation(dense, sx) - 1.0) <= 1e-12);
  }
  SUBCASE("identity") {
    const auto model = random_model(9, 5);
    const auto id = eid_observable(1, 0, 1, 9);
    for (double t : {0.0, 0.3, 3e3}) CHECK(std::abs(expectation(model, id, t) - 1.0) <= 1e-12);
  }
}

TEST_CASE("expectation matches the dense oracle for random product observables") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto model = random_model(n, 1000 + seed);
    const auto obs = sample_observable(n, seed);
    const auto initial = oracle::build_initial(model);
    for (double t : {0.0, 0.37, 5.1, 48.0}) {
      const auto state = oracle::evolve(initial, model, t);
      CHECK(std::abs(expectation(model, obs, t) - oracle::oracle_expectation(state, obs)) <=
            1e-10);
    }
  }
}

TEST_CASE("overlap_r") {
  SUBCASE("t = 0") { CHECK(near(overlap_r(random_model(7, 1), 0.0), 1.0, 1e-12)); }
  SUBCASE("single basis site never decoheres") {
    const auto model = make_model(kInvSqrt2, kInvSqrt2, {{1.0, 0.0, 1.0}});
    for (double t : {0.3, 2.0, 1e3}) {
      CHECK(near(overlap_r(model, t), std::polar(1.0, t), 1e-12));
      CHECK(std::abs(std::abs(overlap_r(model, t)) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("two sites at t = pi/2 vanish") {
    const auto model = uniform_model(2, 1.0);
    CHECK(std::abs(overlap_r(model, kPi / 2)) <= 1e-12);
    CHECK(std::abs(oracle::oracle_overlap(model, kPi / 2)) <= 1e-12);
  }
  SUBCASE("time reversal conjugates") {
    const auto model = random_model(12, 9);
    for (double t : {0.2, 3.3, 71.0}) {
      CHECK(near(overlap_r(model, -t), std::conj(overlap_r(model, t)), 1e-14));
    }
  }
  SUBCASE("squared modulus equals the cosine product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto model = random_model(1 + seed, seed);
      for (double t : {0.1, 4.0, 19.5}) {
        CHECK(std::abs(std::norm(overlap_r(model, t)) - overlap_r_squared(model, t)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("large-N products use the log path") {
  const std::size_t n = 5000;
  const auto model = uniform_model(n, 1.0);
  // Each factor is cos t, so r = cos^n t; at t = 0.2 that is e^{-101.3}.
  const double t = 0.2;
  const auto r = overlap_r_product(model, t);
  CHECK_FALSE(r.underflow);
  const double expected_log = n * std::log(std::cos(t));
  CHECK(std::abs(std::log(std::abs(r.value)) - expected_log) <= 1e-9);
  CHECK(std::abs(r.value.imag()) <= 1e-12 * std::abs(r.value));

  // Far below e^-700 the value is reported as an exact zero with a flag.
  const auto tiny = overlap_r_product(model, 1.0);
  CHECK(tiny.underflow);
  CHECK(tiny.value == 0.0);

  // A site with e_uu = e_dd = 0 and no cross term contributes an exact zero.
  std::vector<Matrix2> parts(n, Matrix2::identity());
  parts[17] = Matrix2::pauli_x();
  const auto zero = gamma0_product(make_model(1.0, 0.0, std::vector<Site>(n, Site{1.0, 0.0, 1.0})),
                                   RelevantObservable(Matrix2::identity(), parts), 0.3);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.underflow);
}

TEST_CASE("ComplexProduct modes agree where both are valid") {
  const auto model = random_model(64, 77);
  // 64 factors multiply directly; declaring 65 switches to the log path.
  ComplexProduct direct(64), logged(65);
  for (const Site& s : model.sites()) {
    const Complex f = std::norm(s.alpha) * std::polar(1.0, s.g) +
                      std::norm(s.beta) * std::polar(1.0, -s.g);
    direct.multiply(f);
    logged.multiply(f);
  }
  const auto d = direct.result().value;
  const auto l = logged.result().value;
  CHECK(std::abs(d - l) <= 1e-12 * std::abs(d));

  ComplexProduct with_zero(100);
  with_zero.multiply(2.0);
  with_zero.multiply(0.0);
  with_zero.multiply(3.0);
  CHECK(with_zero.result().value == 0.0);
  CHECK_FALSE(with_zero.result().underflow);
}

TEST_CASE("r_squared_bounds") {
  const auto [lo, hi] = r_squared_bounds(uniform_model(4, 1.0));
  CHECK(lo <= 1e-30);
  CHECK(hi == 1.0);
  const auto basis = make_model(1.0, 0.0, std::vector<Site>(3, Site{1.0, 0.0, 0.7}));
  CHECK(r_squared_bounds(basis) == std::pair{1.0, 1.0});
  for (double t : {0.5, 9.0}) CHECK(std::abs(overlap_r(basis, t)) == doctest::Approx(1.0));

  const auto quarter =
      make_model(1.0, 0.0, std::vector<Site>(2, Site{std::sqrt(0.75), 0.5, 1.0}));
  CHECK(r_squared_bounds(quarter).first == doctest::Approx(0.0625).epsilon(1e-14));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto model = random_model(1 + seed % 10, seed);
    const auto [lo, hi] = r_squared_bounds(model);
    for (double t = 0.0; t < 60.0; t += 0.37) {
      const double r2 = std::norm(overlap_r(model, t));
      CHECK(r2 >= lo - 1e-12);
      CHECK(r2 <= hi + 1e-12);
    }
  }
}

TEST_CASE("single_spin_expectation") {
  SUBCASE("sigma_z is constant") {
    const auto model = random_model(3, 21);
    const Site& s = model.site(SiteIndex{2});
    for (double t : {0.0, 1.1, 300.0}) {
      CHECK(std::abs(single_spin_expectation(model, SiteIndex{2}, Matrix2::pauli_z(), t) -
                     (std::norm(s.alpha) - std::norm(s.beta))) <= 1e-12);
    }
  }
  SUBCASE("sigma_x with ground central spin is cos g t") {
    const auto model = make_model(1.0, 0.0, {{kInvSqrt2, kInvSqrt2, 1.7}});
    for (double t : {0.0, 0.3, 2.0, 40.0}) {
      CHECK(std::abs(single_spin_expectation(model, SiteIndex{1}, Matrix2::pauli_x(), t) -
                     std::cos(1.7 * t)) <= 1e-12);
    }
  }
  SUBCASE("agrees with the full product evaluation and the oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t n = 1 + seed % 6;
      const auto model = random_model(n, 500 + seed);
      const SiteIndex j{1 + seed % n};
      const auto probe = sample_observable(1, seed).site_parts()[0];
      const auto obs = single_site_observable(j, probe, n);
      const auto initial = oracle::build_initial(model);
      for (double t : {0.0, 0.9, 17.0}) {
        const double fast = single_spin_expectation(model, j, probe, t);
        CHECK(std::abs(fast - expectation(model, obs, t)) <= 1e-12);
        CHECK(std::abs(fast - oracle::oracle_expectation(oracle::evolve(initial, model, t),
                                                         obs)) <= 1e-10);
      }
    }
  }
  SUBCASE("periodic in 2 pi / g_j") {
    const auto model = random_model(4, 8);
    const SiteIndex j{3};
    const double period = 2 * kPi / model.site(j).g;
    const auto probe = sample_observable(1, 99).site_parts()[0];
    for (double t : {0.0, 0.4, 6.0}) {
      CHECK(std::abs(single_spin_expectation(model, j, probe, t) -
                     single_spin_expectation(model, j, probe, t + period)) <= 1e-12);
    }
  }
  SUBCASE("bad index") {
    CHECK_THROWS_AS(single_spin_expectation(uniform_model(2, 1.0), SiteIndex{3},
                                            Matrix2::pauli_z(), 0.0),
                    Error);
  }
}

TEST_CASE("reduced_system_state") {
  SUBCASE("pure projector at t = 0") {
    const auto model = random_model(5, 4);
    const auto rho = reduced_system_state(model, 0.0);
    const Complex a = model.a(), b = model.b();
    CHECK(near(rho.rho00, a * std::conj(a), 1e-12));
    CHECK(near(rho.rho01, a * std::conj(b), 1e-12));
    CHECK(near(rho.rho10, b * std::conj(a), 1e-12));
    CHECK(near(rho.rho11, b * std::conj(b), 1e-12));
  }
  SUBCASE("ground state stays diagonal") {
    const auto model = make_model(1.0, 0.0, {{0.6, 0.8, 1.0}});
    for (double t : {0.0, 3.0}) {
      const auto rho = reduced_system_state(model, t);
      CHECK(near(rho.rho00, 1.0, 0.0));
      CHECK(rho.rho01 == 0.0);
      CHECK(rho.rho11 == 0.0);
    }
  }
  SUBCASE("matches the dense partial trace, with a valid density matrix") {
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
      const std::size_t n = 1 + seed % 8;
      const auto model = random_model(n, 40 + seed);
      const auto initial = oracle::build_initial(model);
      for (double t : {0.0, 0.6, 12.0, 45.0}) {
        const auto fast = reduced_system_state(model, t);
        const auto slow = oracle::partial_trace(oracle::evolve(initial, model, t));
        CHECK(near(fast.rho00, slow.rho00, 1e-10));
        CHECK(near(fast.rho01, slow.rho01, 1e-10));
        CHECK(near(fast.rho10, slow.rho10, 1e-10));
        CHECK(near(fast.rho11, slow.rho11, 1e-10));
        CHECK(std::abs(fast.rho01) ==
              doctest::Approx(std::abs(model.a()) * std::abs(model.b()) *
                              std::abs(overlap_r(model, t))));
        CHECK(std::abs(fast.rho00 + fast.rho11 - 1.0) <= 1e-12);
        // Smallest eigenvalue of a 2x2 Hermitian matrix.
        const double tr = (fast.rho00 + fast.rho11).real();
        const double det = (fast.rho00 * fast.rho11 - fast.rho01 * fast.rho10).real();
        CHECK(tr / 2 - std::sqrt(std::max(0.0, tr * tr / 4 - det)) >= -1e-12);
      }
    }
  }
}

TEST_CASE("EID expectation factors through r(t)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = random_model(2 + seed % 9, 70 + seed);
    const double s00 = -0.4, s11 = 0.9;
    const Complex s01{0.3, 0.5};
    const auto obs = eid_observable(s00, s01, s11, model.size());
    for (double t : {0.0, 2.2, 31.0}) {
      const double want = std::norm(model.a()) * s00 + std::norm(model.b()) * s11 +
                          2.0 * (model.a() * std::conj(model.b()) * std::conj(s01) *
                                 overlap_r(model, t))
                                    .real();
      CHECK(std::abs(expectation(model, obs, t) - want) <= 1e-12);
      CHECK(near(gamma1(model, obs, t), overlap_r(model, t), 1e-12));
    }
  }
}
