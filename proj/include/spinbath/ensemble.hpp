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
#include <numbers>
#include <string>
#include <string_view>

#include "spinbath/model.hpp"

namespace spinbath {

/// SplitMix64 (Steele, Lea, Flood 2014). Used instead of the standard
/// engines so that every platform draws the same numbers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  /// Independent stream for (seed, domain, index): state =
  /// mix(seed) ^ mix(domain << 32 | index).
  static SplitMix64 stream(std::uint64_t seed, std::uint32_t domain,
                           std::uint64_t index);

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// Stream domains, one per kind of draw.
enum class StreamDomain : std::uint32_t {
  kSite = 1,
  kObservableSystem = 2,
  kObservableSite = 3,
  kSampleTimes = 4,
};

/// Parsed distribution spec. Grammar:
///   coefficients: "uniform" | "fixed:<p>"
///   couplings:    "uniform" | "uniform:<lo>,<hi>" | "constant:<g>" |
///                 "commensurate:<g0>"
struct Distribution {
  std::string name;
  double p0 = 0.0;
  double p1 = 0.0;

  static Distribution parse_coefficients(std::string_view spec);
  static Distribution parse_couplings(std::string_view spec);
  std::string to_string() const;
};

/// Seeded random model. Site i draws from its own stream, so the model is
/// independent of evaluation order.
///   uniform coefficients: |alpha|^2 = u, alpha real >= 0, beta =
///     sqrt(1-u) e^{i phi}, phi ~ U[0, 2pi).
///   uniform couplings: g ~ U(lo, hi], default (0, 1].
SpinBathModel sample_model(std::size_t n, std::uint64_t seed,
                           std::string_view coeff_dist = "uniform",
                           std::string_view g_dist = "uniform",
                           Complex a = {1.0 / std::numbers::sqrt2, 0.0},
                           Complex b = {1.0 / std::numbers::sqrt2, 0.0});

/// Random Hermitian probe: diagonal entries U[-1, 1), off-diagonal modulus
/// U[0, 1) with uniform phase.
RelevantObservable sample_observable(std::size_t n, std::uint64_t seed);

}  // namespace spinbath
