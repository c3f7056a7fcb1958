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

// Command-line experiment runner. Flags are folded into a JSON config
// (defaults < --config file < flags) which is handed to sb_run().

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinbath/spinbath.h"

namespace {

using nlohmann::json;

constexpr int kInvalidConfig = 1;
constexpr int kIoFailure = 3;

// Locale-independent, whole-string number parse.
double parse_real(const std::string& flag, const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw CLI::ValidationError(flag, "expected a number, got '" + text + "'");
  }
  return v;
}

json parse_pair(const std::string& text) {
  std::stringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  in >> re;
  if (in.peek() != EOF) in >> comma >> im;
  if (!in || (comma != 0 && comma != ',') || in.peek() != EOF) {
    throw CLI::ValidationError("amplitude", "expected <re>[,<im>], got '" + text + "'");
  }
  return json::array({re, im});
}

json parse_count_list(const std::string& text) {
  json list = json::array();
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw CLI::ValidationError("--n-list", "expected comma-separated integers");
    }
    list.push_back(static_cast<std::uint64_t>(v));
  }
  return list;
}

// Registers flags on one subcommand; every flag writes one config key.
class Flags {
 public:
  Flags(CLI::App* sub, json& overrides) : sub_(sub), overrides_(overrides) {}

  Flags& count(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::uint64_t>(
        flag, [this, key](const std::uint64_t& v) { overrides_[key] = v; }, help);
    return *this;
  }
  Flags& real(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::string>(
        flag, [this, flag, key](const std::string& v) { overrides_[key] = parse_real(flag, v); },
        help);
    return *this;
  }
  Flags& text(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { overrides_[key] = v; }, help);
    return *this;
  }
  Flags& amplitude(const std::string& flag, const std::string& key) {
    sub_->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { overrides_[key] = parse_pair(v); },
        "amplitude as <re>[,<im>]");
    return *this;
  }
  Flags& model() {
    return count("--n", "n", "number of environment spins")
        .count("--seed", "seed", "ensemble seed")
        .text("--coeff-dist", "coeff_dist", "uniform | fixed:<p>")
        .text("--g-dist", "g_dist", "uniform[:lo,hi] | constant:<g> | commensurate:<g0>")
        .amplitude("--a", "a")
        .amplitude("--b", "b");
  }
  Flags& grid() {
    return real("--t-max", "t_max", "grid end in units of 1/mean coupling")
        .count("--points", "points", "grid points");
  }

 private:
  CLI::App* sub_;
  json& overrides_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinbath: central-spin decoherence experiments"};
  app.set_version_flag("--version", sb_version());

  std::string config_path;
  const char* env_out = std::getenv("SPINBATH_OUT_DIR");
  std::string out_dir = env_out ? env_out : ".";
  std::string output_stem;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--out", out_dir, "output directory (default $SPINBATH_OUT_DIR or .)");
  app.add_option("--output", output_stem, "output file stem (default: command name)");
  app.require_subcommand(0, 1);

  json overrides = json::object();
  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    subs[name] = app.add_subcommand(name, help);
    return Flags(subs[name], overrides);
  };

  add("simulate-r", "r(t) trajectory as CSV").model().grid().text(
      "--model-file", "model_file", "read the model from a JSON file instead of sampling");
  add("simulate-obs", "expectation trajectory of an observable as CSV")
      .model()
      .grid()
      .text("--model-file", "model_file", "read the model from a JSON file")
      .text("--obs", "obs", "eid:<s00>,<s01re>,<s01im>,<s11> | single-site:<j>[:<eps>] | random:<seed>")
      .text("--eps", "eps", "site matrix for single-site: sx|sy|sz|id|<uu>,<ud re>,<ud im>,<dd>");
  add("sweep-n", "decoherence verdicts over a list of bath sizes")
      .model()
      .grid()
      .count("--seeds", "seeds", "seeds per bath size")
      .real("--theta", "theta", "decoherence threshold on |r|")
      .real("--window", "window", "hold window in units of 1/mean coupling");
  subs["sweep-n"]->add_option_function<std::string>(
      "--n-list", [&](const std::string& v) { overrides["n_list"] = parse_count_list(v); },
      "comma-separated bath sizes");
  add("oracle-check", "compare the analytic engine with the dense oracle")
      .model()
      .count("--trials", "trials", "random (model, observable) pairs")
      .count("--times", "times", "random times per pair")
      .real("--t-max", "t_max", "time range in units of 1/mean coupling")
      .count("--oracle-cap", "oracle_cap", "largest N the oracle may materialize");
  add("recurrence", "revival of r(t) for commensurate couplings g_i = i * g_base")
      .count("--n", "n", "number of environment spins")
      .count("--seed", "seed", "ensemble seed")
      .text("--coeff-dist", "coeff_dist", "uniform | fixed:<p>")
      .amplitude("--a", "a")
      .amplitude("--b", "b")
      .real("--g-base", "g_base", "base coupling");
  add("timescale", "hbar/V decoherence time estimates")
      .real("--v1", "v1", "system-environment interaction in eV")
      .real("--v2", "v2", "intra-environment interaction in eV");
  add("fluctuation", "long-time average of |r|^2 against its prediction")
      .model()
      .real("--t-start", "t_start", "window start in units of 1/mean coupling")
      .real("--t-end", "t_end", "window end in units of 1/mean coupling")
      .count("--samples", "samples", "random sample times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kInvalidConfig;
  }

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read " << config_path << '\n';
      return kIoFailure;
    }
    try {
      in >> config;
    } catch (const json::exception& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << '\n';
      return kInvalidConfig;
    }
    if (!config.is_object()) {
      std::cerr << "error: " << config_path << " is not a JSON object\n";
      return kInvalidConfig;
    }
  }
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) config["command"] = name;
  }
  if (!config.contains("command")) {
    std::cerr << "error: no command given (one of " << sb_command_names() << ")\n\n"
              << app.help();
    return kInvalidConfig;
  }
  config.update(overrides);
  if (!output_stem.empty()) config["output"] = output_stem;

  const int status = sb_run(config.dump().c_str(), out_dir.c_str());
  if (status != 0) {
    std::cerr << "error: " << sb_last_error() << '\n';
  }
  return status;
}
