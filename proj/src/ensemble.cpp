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

#include "spinbath/ensemble.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "spinbath/error.hpp"

namespace spinbath {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_number(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad number '" + std::string(text) + "' in '" + std::string(spec) + "'");
  }
  return value;
}

// Splits "name:x,y" into name and parameter list.
std::pair<std::string, std::vector<double>> split_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      params.push_back(parse_number(rest.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return {std::move(name), std::move(params)};
}

[[noreturn]] void unknown(std::string_view kind, std::string_view spec) {
  throw Error(ErrorCode::kUnknownName,
              "unknown " + std::string(kind) + " distribution '" + std::string(spec) + "'");
}

void expect_params(const std::vector<double>& params, std::size_t n, std::string_view spec) {
  if (params.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "distribution '" + std::string(spec) + "' expects " + std::to_string(n) +
                    " parameter(s)");
  }
}

Complex random_offdiagonal(SplitMix64& rng) {
  const double modulus = rng.uniform();
  return std::polar(modulus, kTwoPi * rng.uniform());
}

double random_diagonal(SplitMix64& rng) { return 2.0 * rng.uniform() - 1.0; }

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint32_t domain,
                              std::uint64_t index) {
  return SplitMix64(mix(seed) ^ mix((std::uint64_t{domain} << 32) | index));
}

Distribution Distribution::parse_coefficients(std::string_view spec) {
  auto [name, params] = split_spec(spec);
  if (name == "uniform") {
    expect_params(params, 0, spec);
    return {name};
  }
  if (name == "fixed") {
    expect_params(params, 1, spec);
    if (params[0] < 0.0 || params[0] > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "fixed:<p> needs p in [0, 1]");
    }
    return {name, params[0]};
  }
  unknown("coefficient", spec);
}

Distribution Distribution::parse_couplings(std::string_view spec) {
  auto [name, params] = split_spec(spec);
  if (name == "uniform") {
    if (params.empty()) return {name, 0.0, 1.0};
    expect_params(params, 2, spec);
    if (params[0] < 0.0 || params[1] <= params[0]) {
      throw Error(ErrorCode::kInvalidArgument, "uniform:<lo>,<hi> needs 0 <= lo < hi");
    }
    return {name, params[0], params[1]};
  }
  if (name == "constant" || name == "commensurate") {
    expect_params(params, 1, spec);
    if (params[0] <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, name + " coupling must be positive");
    }
    return {name, params[0]};
  }
  unknown("coupling", spec);
}

std::string Distribution::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << name;
  if (name == "fixed" || name == "constant" || name == "commensurate") {
    out << ':' << p0;
  } else if (name == "uniform" && p1 != 0.0) {
    out << ':' << p0 << ',' << p1;
  }
  return out.str();
}

SpinBathModel sample_model(std::size_t n, std::uint64_t seed,
                           std::string_view coeff_dist, std::string_view g_dist,
                           Complex a, Complex b) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample_model needs N >= 1");
  const Distribution coeffs = Distribution::parse_coefficients(coeff_dist);
  const Distribution couplings = Distribution::parse_couplings(g_dist);

  std::vector<Site> sites(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = SplitMix64::stream(seed, static_cast<std::uint32_t>(StreamDomain::kSite), i + 1);
    // Fixed draw order per site: modulus, phase, coupling.
    const double u = rng.uniform();
    const double phi = kTwoPi * rng.uniform();
    const double v = rng.uniform();

    Site& s = sites[i];
    if (coeffs.name == "uniform") {
      s.alpha = std::sqrt(u);
      s.beta = std::polar(std::sqrt(1.0 - u), phi);
    } else {
      s.alpha = std::sqrt(coeffs.p0);
      s.beta = std::sqrt(1.0 - coeffs.p0);
    }

    if (couplings.name == "uniform") {
      s.g = couplings.p1 - (couplings.p1 - couplings.p0) * v;
    } else if (couplings.name == "constant") {
      s.g = couplings.p0;
    } else {
      s.g = couplings.p0 * static_cast<double>(i + 1);
    }
  }
  return make_model(a, b, std::move(sites));
}

RelevantObservable sample_observable(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample_observable needs N >= 1");
  auto sys = SplitMix64::stream(
      seed, static_cast<std::uint32_t>(StreamDomain::kObservableSystem), 0);
  const double s00 = random_diagonal(sys);
  const double s11 = random_diagonal(sys);
  const Complex s01 = random_offdiagonal(sys);

  std::vector<Matrix2> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = SplitMix64::stream(
        seed, static_cast<std::uint32_t>(StreamDomain::kObservableSite), i + 1);
    const double e00 = random_diagonal(rng);
    const double e11 = random_diagonal(rng);
    parts[i] = Matrix2::hermitian(e00, random_offdiagonal(rng), e11);
  }
  return RelevantObservable(Matrix2::hermitian(s00, s01, s11), std::move(parts));
}

}  // namespace spinbath
