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

#include <cmath>
#include <complex>
#include <cstddef>

namespace spinbath {

struct ProductResult {
  std::complex<double> value;
  /// Set when the log-magnitude fell below kUnderflowLog and the value was
  /// reported as exact zero.
  bool underflow = false;
};

/// Multiplies many complex factors. Up to kDirectLimit factors are multiplied
/// directly; beyond that the magnitude is accumulated as a sum of logs and the
/// phase as a sum of arguments. A factor that is exactly zero makes the
/// product exactly zero.
class ComplexProduct {
 public:
  static constexpr std::size_t kDirectLimit = 64;
  static constexpr double kUnderflowLog = -700.0;

  explicit ComplexProduct(std::size_t expected_factors)
      : log_mode_(expected_factors > kDirectLimit) {}

  void multiply(std::complex<double> f) {
    if (zero_) return;
    if (f == 0.0) {
      zero_ = true;
      return;
    }
    if (log_mode_) {
      log_abs_ += std::log(std::abs(f));
      phase_ += std::arg(f);
    } else {
      direct_ *= f;
    }
  }

  ProductResult result() const {
    if (zero_) return {0.0, false};
    if (!log_mode_) return {direct_, false};
    if (log_abs_ < kUnderflowLog) return {0.0, true};
    return {std::polar(std::exp(log_abs_), phase_), false};
  }

 private:
  bool log_mode_;
  bool zero_ = false;
  std::complex<double> direct_{1.0, 0.0};
  double log_abs_ = 0.0;
  double phase_ = 0.0;
};

}  // namespace spinbath
