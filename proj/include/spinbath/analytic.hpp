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

#include <utility>

#include "spinbath/model.hpp"
#include "spinbath/stable_product.hpp"

// Closed-form evaluation of expectation values for the central-spin model.
// Every function is a pure pointwise evaluator in raw time t (hbar = 1,
// couplings are angular frequencies) and costs O(N).
//
// With |psi(t)> = a|0>|E0(t)> + b|1>|E1(t)> and
//   E0(t) = (x)_i (alpha_i e^{+i g_i t/2} |up> + beta_i e^{-i g_i t/2} |down>),
//   E1(t) = E0(-t),
// a product observable S (x) eps_1 (x) ... (x) eps_N has
//   <O> = |a|^2 s00 G0(t) + |b|^2 s11 G0(-t) + 2 Re[a b* s10 G1(t)]
// where G0(t) = prod_i <E0_i|eps_i|E0_i> and G1(t) = prod_i <E1_i|eps_i|E0_i>.

namespace spinbath {

struct GammaPair {
  double gamma0 = 0.0;
  Complex gamma1;
  double t = 0.0;
};

/// Hermitian, unit-trace 2x2 density matrix of the central spin.
struct ReducedState {
  Complex rho00;
  Complex rho01;
  Complex rho10;
  Complex rho11;
};

ProductResult gamma0_product(const SpinBathModel& model,
                             const RelevantObservable& obs, double t);
ProductResult gamma1_product(const SpinBathModel& model,
                             const RelevantObservable& obs, double t);

/// prod_i [|alpha_i|^2 e_uu + |beta_i|^2 e_dd + 2 Re(alpha_i* beta_i e_ud e^{-i g_i t})]
double gamma0(const SpinBathModel& model, const RelevantObservable& obs, double t);

/// prod_i [|alpha_i|^2 e_uu e^{i g_i t} + |beta_i|^2 e_dd e^{-i g_i t}
///         + 2 Re(alpha_i* beta_i e_ud)]
Complex gamma1(const SpinBathModel& model, const RelevantObservable& obs, double t);

GammaPair gammas(const SpinBathModel& model, const RelevantObservable& obs, double t);

double expectation(const SpinBathModel& model, const RelevantObservable& obs, double t);

/// Bath-branch overlap r(t) = <E1(t)|E0(t)> = prod_i (|alpha_i|^2 e^{i g_i t}
/// + |beta_i|^2 e^{-i g_i t}).
Complex overlap_r(const SpinBathModel& model, double t);
ProductResult overlap_r_product(const SpinBathModel& model, double t);

/// |r(t)|^2 as prod_i (|alpha_i|^4 + |beta_i|^4 + 2|alpha_i|^2|beta_i|^2 cos 2 g_i t).
double overlap_r_squared(const SpinBathModel& model, double t);

/// (prod_i (2|alpha_i|^2 - 1)^2, 1): the range |r(t)|^2 can visit.
std::pair<double, double> r_squared_bounds(const SpinBathModel& model);

/// <I (x) eps_j (x) I...> evaluated from the two site-j branch factors only.
double single_spin_expectation(const SpinBathModel& model, SiteIndex j,
                               const Matrix2& eps, double t);

/// Partial trace over the bath: diag(|a|^2, |b|^2) with coherence a b* r(t).
ReducedState reduced_system_state(const SpinBathModel& model, double t);

}  // namespace spinbath
