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

#include "spinbath/model.hpp"

#include <cmath>
#include <numeric>

#include "spinbath/error.hpp"

namespace spinbath {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Returns the factor that was applied to bring |x|^2 + |y|^2 to one.
double normalize_pair(Complex& x, Complex& y, Normalization mode,
                      const std::string& what) {
  if (!finite(x) || !finite(y)) {
    throw Error(ErrorCode::kInvalidArgument, what + ": non-finite amplitude");
  }
  const double norm2 = std::norm(x) + std::norm(y);
  if (norm2 == 0.0) {
    throw Error(ErrorCode::kNotNormalized, what + ": zero-norm amplitude pair");
  }
  if (mode == Normalization::kStrict) {
    if (std::abs(norm2 - 1.0) > SpinBathModel::kStrictTolerance) {
      throw Error(ErrorCode::kNotNormalized,
                  what + ": squared norm " + std::to_string(norm2) + " is not 1");
    }
    return 1.0;
  }
  const double factor = 1.0 / std::sqrt(norm2);
  x *= factor;
  y *= factor;
  return factor;
}

}  // namespace

bool Matrix2::is_hermitian(double tol) const {
  return std::abs(m00.imag()) <= tol && std::abs(m11.imag()) <= tol &&
         std::abs(m01 - std::conj(m10)) <= tol;
}

const Site& SpinBathModel::site(SiteIndex j) const {
  if (j.value < 1 || j.value > sites_.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "site index " + std::to_string(j.value) + " outside 1.." +
                    std::to_string(sites_.size()));
  }
  return sites_[j.value - 1];
}

SpinBathModel make_model(Complex a, Complex b, std::vector<Site> sites,
                         Normalization mode) {
  if (sites.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "model needs at least one site");
  }
  SpinBathModel model;
  model.factors_.reserve(sites.size() + 1);
  model.factors_.push_back(normalize_pair(a, b, mode, "system"));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Site& s = sites[i];
    const std::string name = "site " + std::to_string(i + 1);
    if (!std::isfinite(s.g) || s.g <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, name + ": coupling must be positive");
    }
    model.factors_.push_back(normalize_pair(s.alpha, s.beta, mode, name));
  }
  model.a_ = a;
  model.b_ = b;
  model.mean_coupling_ =
      std::accumulate(sites.begin(), sites.end(), 0.0,
                      [](double acc, const Site& s) { return acc + s.g; }) /
      static_cast<double>(sites.size());
  model.sites_ = std::move(sites);
  return model;
}

RelevantObservable::RelevantObservable(Matrix2 system_part,
                                       std::vector<Matrix2> site_parts)
    : system_(system_part), sites_(std::move(site_parts)) {
  if (sites_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "observable needs at least one site part");
  }
  if (!system_.is_hermitian()) {
    throw Error(ErrorCode::kInvalidArgument, "system part is not Hermitian");
  }
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!sites_[i].is_hermitian()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "site part " + std::to_string(i + 1) + " is not Hermitian");
    }
  }
}

bool RelevantObservable::is_system_only(double tol) const {
  const Matrix2 id = Matrix2::identity();
  for (const Matrix2& m : sites_) {
    if (std::abs(m.m00 - id.m00) > tol || std::abs(m.m11 - id.m11) > tol ||
        std::abs(m.m01) > tol || std::abs(m.m10) > tol) {
      return false;
    }
  }
  return true;
}

RelevantObservable eid_observable(double s00, Complex s01, double s11,
                                  std::size_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "observable needs N >= 1");
  }
  return RelevantObservable(Matrix2::hermitian(s00, s01, s11),
                            std::vector<Matrix2>(n, Matrix2::identity()));
}

RelevantObservable single_site_observable(SiteIndex j, const Matrix2& eps,
                                          std::size_t n) {
  if (j.value < 1 || j.value > n) {
    throw Error(ErrorCode::kOutOfRange, "site index " + std::to_string(j.value) +
                                            " outside 1.." + std::to_string(n));
  }
  std::vector<Matrix2> parts(n, Matrix2::identity());
  parts[j.value - 1] = eps;
  return RelevantObservable(Matrix2::identity(), std::move(parts));
}

void Trajectory::validate() const {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::kSizeMismatch, "trajectory times/values length mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "trajectory times not strictly increasing");
    }
  }
}

}  // namespace spinbath
