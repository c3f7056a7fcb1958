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

#include "spinbath/dense_oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "spinbath/error.hpp"

namespace spinbath::oracle {
namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorCode::kResourceCap, "dense oracle limited to " +
                                             std::to_string(cap) + " sites, got " +
                                             std::to_string(n));
  }
}

// Bit of site i (1-based) in an index over n sites.
std::size_t site_bit(std::size_t i, std::size_t n) { return std::size_t{1} << (n - i); }

// Applies m to the qubit selected by mask, in place.
void apply(std::vector<Complex>& v, std::size_t mask, const Matrix2& m) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k & mask) continue;
    const Complex lo = v[k];
    const Complex hi = v[k | mask];
    v[k] = m.m00 * lo + m.m01 * hi;
    v[k | mask] = m.m10 * lo + m.m11 * hi;
  }
}

// One bath branch: (x)_i (alpha_i e^{i z g_i t/2} up + beta_i e^{-i z g_i t/2} down).
std::vector<Complex> branch_state(const SpinBathModel& model, double z, double t) {
  const std::size_t n = model.size();
  std::vector<Complex> v(std::size_t{1} << n);
  for (std::size_t k = 0; k < v.size(); ++k) {
    Complex amp = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const Site& s = model.sites()[i - 1];
      const bool down = k & site_bit(i, n);
      amp *= down ? s.beta * std::polar(1.0, -z * s.g * t / 2.0)
                  : s.alpha * std::polar(1.0, z * s.g * t / 2.0);
    }
    v[k] = amp;
  }
  return v;
}

}  // namespace

DenseState::DenseState(std::vector<Complex> amplitudes, std::size_t sites, double t)
    : amps_(std::move(amplitudes)), sites_(sites), t_(t) {
  if (amps_.size() < 4 || !std::has_single_bit(amps_.size()) ||
      amps_.size() != (std::size_t{2} << sites_)) {
    throw Error(ErrorCode::kSizeMismatch, "dense state length must be 2^(N+1)");
  }
}

double DenseState::norm_squared() const {
  double acc = 0.0;
  for (const Complex& c : amps_) acc += std::norm(c);
  return acc;
}

DenseState build_initial(const SpinBathModel& model, std::size_t site_cap) {
  const std::size_t n = model.size();
  check_cap(n, site_cap);
  const std::size_t half = std::size_t{1} << n;
  std::vector<Complex> amps(2 * half);
  for (std::size_t k = 0; k < half; ++k) {
    Complex bath = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const Site& s = model.sites()[i - 1];
      bath *= (k & site_bit(i, n)) ? s.beta : s.alpha;
    }
    amps[k] = model.a() * bath;
    amps[half + k] = model.b() * bath;
  }
  return DenseState(std::move(amps), n, 0.0);
}

DenseState evolve(const DenseState& state, const SpinBathModel& model, double t) {
  const std::size_t n = model.size();
  if (state.sites() != n) {
    throw Error(ErrorCode::kSizeMismatch, "dense state and model disagree on N");
  }
  const std::size_t half = std::size_t{1} << n;
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    const double z = k < half ? 1.0 : -1.0;
    double field = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double sigma = (k & site_bit(i, n)) ? -1.0 : 1.0;
      field += model.sites()[i - 1].g * sigma;
    }
    out[k] = in[k] * std::polar(1.0, z * field * t / 2.0);
  }
  return DenseState(std::move(out), n, state.time() + t);
}

double oracle_expectation(const DenseState& state, const RelevantObservable& obs) {
  const std::size_t n = state.sites();
  if (obs.size() != n) {
    throw Error(ErrorCode::kSizeMismatch, "observable and dense state disagree on N");
  }
  const auto psi = state.amplitudes();
  std::vector<Complex> phi(psi.begin(), psi.end());
  apply(phi, std::size_t{1} << n, obs.system_part());
  for (std::size_t i = 1; i <= n; ++i) {
    apply(phi, site_bit(i, n), obs.site_parts()[i - 1]);
  }
  Complex acc = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) acc += std::conj(psi[k]) * phi[k];
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
    throw Error(ErrorCode::kNumerical, "expectation has imaginary residue " +
                                           std::to_string(acc.imag()));
  }
  return acc.real();
}

Complex oracle_overlap(const SpinBathModel& model, double t, std::size_t site_cap) {
  check_cap(model.size(), site_cap);
  const auto e0 = branch_state(model, 1.0, t);
  const auto e1 = branch_state(model, -1.0, t);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < e0.size(); ++k) acc += std::conj(e1[k]) * e0[k];
  return acc;
}

ReducedState partial_trace(const DenseState& state) {
  const auto psi = state.amplitudes();
  const std::size_t half = psi.size() / 2;
  ReducedState rho{};
  for (std::size_t k = 0; k < half; ++k) {
    const Complex up = psi[k];
    const Complex dn = psi[half + k];
    rho.rho00 += up * std::conj(up);
    rho.rho01 += up * std::conj(dn);
    rho.rho11 += dn * std::conj(dn);
  }
  rho.rho10 = std::conj(rho.rho01);
  return rho;
}

}  // namespace spinbath::oracle
