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

#include "spinbath/analytic.hpp"

#include <cmath>
#include <string>

#include "spinbath/error.hpp"

namespace spinbath {
namespace {

void check_sizes(const SpinBathModel& model, const RelevantObservable& obs) {
  if (model.size() != obs.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "observable has " + std::to_string(obs.size()) +
                    " site parts, model has " + std::to_string(model.size()) + " sites");
  }
}

// <E0_i(t)| eps |E0_i(t)>; real for Hermitian eps.
double branch_factor(const Site& s, const Matrix2& eps, double t) {
  const Complex cross = std::conj(s.alpha) * s.beta * eps.m01 *
                        std::polar(1.0, -s.g * t);
  return std::norm(s.alpha) * eps.m00.real() + std::norm(s.beta) * eps.m11.real() +
         2.0 * cross.real();
}

// <E1_i(t)| eps |E0_i(t)>
Complex coherence_factor(const Site& s, const Matrix2& eps, double t) {
  const Complex phase = std::polar(1.0, s.g * t);
  return std::norm(s.alpha) * eps.m00.real() * phase +
         std::norm(s.beta) * eps.m11.real() * std::conj(phase) +
         2.0 * (std::conj(s.alpha) * s.beta * eps.m01).real();
}

}  // namespace

ProductResult gamma0_product(const SpinBathModel& model,
                             const RelevantObservable& obs, double t) {
  check_sizes(model, obs);
  ComplexProduct product(model.size());
  const auto sites = model.sites();
  const auto parts = obs.site_parts();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    product.multiply(branch_factor(sites[i], parts[i], t));
  }
  return product.result();
}

ProductResult gamma1_product(const SpinBathModel& model,
                             const RelevantObservable& obs, double t) {
  check_sizes(model, obs);
  ComplexProduct product(model.size());
  const auto sites = model.sites();
  const auto parts = obs.site_parts();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    product.multiply(coherence_factor(sites[i], parts[i], t));
  }
  return product.result();
}

double gamma0(const SpinBathModel& model, const RelevantObservable& obs, double t) {
  return gamma0_product(model, obs, t).value.real();
}

Complex gamma1(const SpinBathModel& model, const RelevantObservable& obs, double t) {
  return gamma1_product(model, obs, t).value;
}

GammaPair gammas(const SpinBathModel& model, const RelevantObservable& obs, double t) {
  return {gamma0(model, obs, t), gamma1(model, obs, t), t};
}

double expectation(const SpinBathModel& model, const RelevantObservable& obs, double t) {
  check_sizes(model, obs);
  const Matrix2& s = obs.system_part();
  const double upper = std::norm(model.a()) * s.m00.real();
  const double lower = std::norm(model.b()) * s.m11.real();
  double value = 0.0;
  // The |1> branch sees the bath evolve backwards in time.
  if (upper != 0.0) value += upper * gamma0(model, obs, t);
  if (lower != 0.0) value += lower * gamma0(model, obs, -t);
  const Complex coherence = model.a() * std::conj(model.b()) * s.m10;
  if (coherence != 0.0) value += 2.0 * (coherence * gamma1(model, obs, t)).real();
  return value;
}

ProductResult overlap_r_product(const SpinBathModel& model, double t) {
  ComplexProduct product(model.size());
  for (const Site& s : model.sites()) {
    const Complex phase = std::polar(1.0, s.g * t);
    product.multiply(std::norm(s.alpha) * phase + std::norm(s.beta) * std::conj(phase));
  }
  return product.result();
}

Complex overlap_r(const SpinBathModel& model, double t) {
  return overlap_r_product(model, t).value;
}

double overlap_r_squared(const SpinBathModel& model, double t) {
  ComplexProduct product(model.size());
  for (const Site& s : model.sites()) {
    const double p = std::norm(s.alpha);
    const double q = std::norm(s.beta);
    product.multiply(p * p + q * q + 2.0 * p * q * std::cos(2.0 * s.g * t));
  }
  return product.result().value.real();
}

std::pair<double, double> r_squared_bounds(const SpinBathModel& model) {
  ComplexProduct product(model.size());
  for (const Site& s : model.sites()) {
    const double d = 2.0 * std::norm(s.alpha) - 1.0;
    product.multiply(d * d);
  }
  return {product.result().value.real(), 1.0};
}

double single_spin_expectation(const SpinBathModel& model, SiteIndex j,
                               const Matrix2& eps, double t) {
  if (!eps.is_hermitian()) {
    throw Error(ErrorCode::kInvalidArgument, "site observable is not Hermitian");
  }
  const Site& s = model.site(j);
  return std::norm(model.a()) * branch_factor(s, eps, t) +
         std::norm(model.b()) * branch_factor(s, eps, -t);
}

ReducedState reduced_system_state(const SpinBathModel& model, double t) {
  const Complex coherence = model.a() * std::conj(model.b()) * overlap_r(model, t);
  return {std::norm(model.a()), coherence, std::conj(coherence), std::norm(model.b())};
}

}  // namespace spinbath
