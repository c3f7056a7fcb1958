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

#include <cstddef>
#include <span>
#include <vector>

#include "spinbath/analytic.hpp"
#include "spinbath/model.hpp"

// Brute-force reference for the analytic engine. The full 2^(N+1) state is
// materialized and evolved basis state by basis state; nothing here uses the
// product formulas.
//
// Layout: the central spin is the most significant bit of the basis index and
// site i sits at bit N - i. Bit value 0 is |0> (central) or |up> (site).

namespace spinbath::oracle {

inline constexpr std::size_t kDefaultSiteCap = 24;

class DenseState {
 public:
  DenseState(std::vector<Complex> amplitudes, std::size_t sites, double t);

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::size_t sites() const noexcept { return sites_; }
  double time() const noexcept { return t_; }
  double norm_squared() const;

 private:
  std::vector<Complex> amps_;
  std::size_t sites_;
  double t_;
};

DenseState build_initial(const SpinBathModel& model,
                         std::size_t site_cap = kDefaultSiteCap);

/// Advances the state by t under H = (1/2) sigma_z^(0) sum_i g_i sigma_z^(i).
/// Basis state (s, sigma_1..sigma_N) picks up exp(i z_s (sum_i g_i sigma_i) t/2)
/// with z = +1 for |0>, -1 for |1>, sigma = +1 for up, -1 for down.
DenseState evolve(const DenseState& state, const SpinBathModel& model, double t);

/// <psi|O|psi> by applying each 2x2 factor to its bit in turn. Throws if the
/// imaginary residue exceeds 1e-10 (relative to max(1, |Re|)).
double oracle_expectation(const DenseState& state, const RelevantObservable& obs);

/// Builds E0(t) and E1(t) as explicit 2^N vectors and returns <E1|E0>.
Complex oracle_overlap(const SpinBathModel& model, double t,
                       std::size_t site_cap = kDefaultSiteCap);

/// Traces the bath out of the dense state.
ReducedState partial_trace(const DenseState& state);

}  // namespace spinbath::oracle
