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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spinbath {

using Complex = std::complex<double>;

/// A 2x2 complex matrix in a fixed two-level basis. For the central spin the
/// basis is (|0>, |1>); for a bath site it is (|up>, |down>).
struct Matrix2 {
  Complex m00{};
  Complex m01{};
  Complex m10{};
  Complex m11{};

  bool is_hermitian(double tol = 1e-12) const;

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
  static Matrix2 pauli_y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
  static Matrix2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

  /// Builds a Hermitian matrix from its two real diagonal entries and the
  /// upper off-diagonal entry.
  static Matrix2 hermitian(double d0, Complex upper, double d1) {
    return {d0, upper, std::conj(upper), d1};
  }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// One environment spin: initial amplitudes on |up>, |down> and its coupling
/// frequency to the central spin.
struct Site {
  Complex alpha;
  Complex beta;
  double g = 0.0;

  friend bool operator==(const Site&, const Site&) = default;
};

/// 1-based index of an environment spin.
struct SiteIndex {
  std::size_t value = 0;
};

enum class Normalization { kStrict, kLenient };

/// Central spin S0 in state a|0> + b|1> coupled to N environment spins, each
/// in alpha_i|up> + beta_i|down>. Immutable once built.
class SpinBathModel {
 public:
  static constexpr double kStrictTolerance = 1e-9;

  const Complex& a() const noexcept { return a_; }
  const Complex& b() const noexcept { return b_; }
  std::span<const Site> sites() const noexcept { return sites_; }
  std::size_t size() const noexcept { return sites_.size(); }
  const Site& site(SiteIndex j) const;

  /// Mean coupling; the natural time unit of the model is 1/mean_coupling().
  double mean_coupling() const noexcept { return mean_coupling_; }

  /// Factors applied by lenient construction: entry 0 is for (a, b), entry i
  /// for site i. All ones for strictly built models.
  std::span<const double> normalization_factors() const noexcept {
    return factors_;
  }

  friend bool operator==(const SpinBathModel& x, const SpinBathModel& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.sites_ == y.sites_;
  }

 private:
  friend SpinBathModel make_model(Complex, Complex, std::vector<Site>,
                                  Normalization);
  SpinBathModel() = default;

  Complex a_;
  Complex b_;
  std::vector<Site> sites_;
  std::vector<double> factors_;
  double mean_coupling_ = 0.0;
};

/// Validates and builds a model. Strict mode rejects states whose squared norm
/// differs from one by more than 1e-9; lenient mode rescales and records the
/// factor. Zero-norm pairs, non-positive or non-finite couplings and empty
/// site lists are always rejected.
SpinBathModel make_model(Complex a, Complex b, std::vector<Site> sites,
                         Normalization mode = Normalization::kStrict);

/// Product observable S (x) eps_1 (x) ... (x) eps_N.
class RelevantObservable {
 public:
  RelevantObservable(Matrix2 system_part, std::vector<Matrix2> site_parts);

  const Matrix2& system_part() const noexcept { return system_; }
  std::span<const Matrix2> site_parts() const noexcept { return sites_; }
  std::size_t size() const noexcept { return sites_.size(); }

  /// True when every site part is the identity, i.e. the observable only
  /// looks at the central spin.
  bool is_system_only(double tol = 1e-12) const;

 private:
  Matrix2 system_;
  std::vector<Matrix2> sites_;
};

/// Central-spin observable with identity on every environment spin.
RelevantObservable eid_observable(double s00, Complex s01, double s11,
                                  std::size_t n);

/// Observable acting as eps on environment spin j and identity elsewhere.
RelevantObservable single_site_observable(SiteIndex j, const Matrix2& eps,
                                          std::size_t n);

/// Sampled time series. Times are in units of 1/mean_coupling of the model
/// that produced it.
struct Trajectory {
  std::vector<double> times;
  std::vector<Complex> values;
  std::string label;
  std::string config_digest;

  /// Throws unless times are strictly increasing and sizes agree.
  void validate() const;
};

}  // namespace spinbath
