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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinbath/model.hpp"

namespace spinbath {

inline constexpr std::string_view kVersion = "spinbath 0.1.0";

/// Process exit statuses of a run.
enum class ExitStatus : int {
  kOk = 0,
  kInvalidConfig = 1,
  kResourceCap = 2,
  kIo = 3,
  kCheckFailed = 4,
};

/// "%.17g": 17 significant digits, lowercase exponent, "inf"/"nan" spelled out.
std::string format_double(double x);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hex FNV-1a digest of the canonical (sorted-key, compact) JSON dump.
std::string config_digest(const nlohmann::json& canonical);

nlohmann::json model_to_json(const SpinBathModel& model);
SpinBathModel model_from_json(const nlohmann::json& doc);

/// Parses an observable spec:
///   eid:<s00>,<s01 re>,<s01 im>,<s11>
///   single-site:<j>[:<eps>]   eps = sx | sy | sz | id | <uu>,<ud re>,<ud im>,<dd>
///   random:<seed>
/// `eps` supplies the site matrix when the single-site form omits it.
RelevantObservable parse_observable(std::string_view spec, std::string_view eps,
                                    std::size_t n);
Matrix2 parse_site_matrix(std::string_view spec);

/// Fills defaults for the config's command and rejects unknown keys or
/// commands. The result is what gets digested.
nlohmann::json resolve_config(const nlohmann::json& config);

std::vector<std::string> command_names();

struct RunResult {
  ExitStatus status = ExitStatus::kOk;
  std::string message;
  std::vector<std::filesystem::path> files;
};

/// Runs one experiment and writes its outputs into out_dir (created if
/// missing). Never throws; failures are reported through the status.
RunResult run(const nlohmann::json& config, const std::filesystem::path& out_dir);

}  // namespace spinbath
