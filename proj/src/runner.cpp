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

#include "spinbath/runner.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "spinbath/analysis.hpp"
#include "spinbath/analytic.hpp"
#include "spinbath/dense_oracle.hpp"
#include "spinbath/ensemble.hpp"
#include "spinbath/error.hpp"

namespace spinbath {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kOracleTolerance = 1e-10;
constexpr double kRevivalTolerance = 1e-10;

const json kAmplitude = json::array({1.0 / std::numbers::sqrt2, 0.0});

json model_defaults(std::size_t n) {
  return {{"n", n},           {"seed", 7},        {"coeff_dist", "uniform"},
          {"g_dist", "uniform"}, {"a", kAmplitude}, {"b", kAmplitude}};
}

const std::map<std::string, json>& command_defaults() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    json sim = model_defaults(100);
    sim.update({{"t_max", 100.0}, {"points", 2000}, {"model_file", ""}});
    t["simulate-r"] = sim;
    sim.update({{"obs", "eid:1,0,0,-1"}, {"eps", ""}});
    t["simulate-obs"] = sim;

    json sweep = model_defaults(0);
    sweep.erase("n");
    sweep.update({{"n_list", json::array({20, 100})},
                  {"seeds", 5},
                  {"t_max", 100.0},
                  {"points", 2000},
                  {"theta", 0.1},
                  {"window", 20.0}});
    t["sweep-n"] = sweep;

    json oracle = model_defaults(8);
    oracle.update({{"trials", 20}, {"times", 10}, {"t_max", 50.0}, {"oracle_cap", 24}});
    t["oracle-check"] = oracle;

    json rec = model_defaults(5);
    rec.erase("g_dist");
    rec.update({{"g_base", 1.0}});
    t["recurrence"] = rec;

    t["timescale"] = json{{"v1", 1e23}, {"v2", 1.0}};

    json fluct = model_defaults(20);
    fluct.update({{"t_start", 50.0}, {"t_end", 550.0}, {"samples", 20000}});
    t["fluctuation"] = fluct;

    for (auto& [name, defaults] : t) {
      defaults["command"] = name;
      defaults["output"] = "";
    }
    return t;
  }();
  return table;
}

const std::set<std::string> kCountKeys = {"n",      "seed",    "seeds",      "points",
                                          "trials", "samples", "oracle_cap", "times"};

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

Complex amplitude(const json& v, const char* key) {
  const json& pair = v.at(key);
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    bad_config(std::string(key) + " must be [re, im]");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

double number(const json& cfg, const char* key) { return cfg.at(key).get<double>(); }
std::size_t count(const json& cfg, const char* key) { return cfg.at(key).get<std::size_t>(); }
std::uint64_t seed_of(const json& cfg) { return cfg.at("seed").get<std::uint64_t>(); }

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    bad_config("bad number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

SpinBathModel load_or_sample(const json& cfg) {
  const std::string file = cfg.value("model_file", "");
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::kIo, "cannot read model file " + file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      bad_config("model file " + file + ": " + e.what());
    }
    return model_from_json(doc);
  }
  return sample_model(count(cfg, "n"), seed_of(cfg), cfg.at("coeff_dist").get<std::string>(),
                      cfg.at("g_dist").get<std::string>(), amplitude(cfg, "a"),
                      amplitude(cfg, "b"));
}

class CsvWriter {
 public:
  CsvWriter(const std::string& digest, const std::vector<std::string>& columns) {
    out_ << "# config_digest=" << digest << '\n' << "# version=" << kVersion << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())) ||
      !out.flush()) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

json with_provenance(json body, const json& cfg, const std::string& digest) {
  body["config_digest"] = digest;
  body["version"] = kVersion;
  body["config"] = cfg;
  return body;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Context {
  json cfg;
  std::string digest;
  fs::path out_dir;
  std::string stem;
  RunResult* result;

  fs::path emit(const std::string& suffix, const std::string& bytes) const {
    fs::path path = out_dir / (stem + suffix);
    write_file(path, bytes);
    result->files.push_back(path);
    return path;
  }
  void emit_json(const std::string& suffix, const json& body) const {
    emit(suffix, with_provenance(body, cfg, digest).dump(2) + "\n");
  }
};

void run_simulate_r(const Context& ctx) {
  const auto model = load_or_sample(ctx.cfg);
  const auto grid = uniform_grid(number(ctx.cfg, "t_max"), count(ctx.cfg, "points"));
  const auto traj = overlap_trajectory(model, grid);
  CsvWriter csv(ctx.digest, {"t", "re_r", "im_r", "abs_r"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Complex r = traj.values[k];
    csv.row({format_double(traj.times[k]), format_double(r.real()), format_double(r.imag()),
             format_double(std::abs(r))});
  }
  ctx.emit(".csv", csv.str());
  ctx.emit_json("_model.json", {{"model", model_to_json(model)}});
}

void run_simulate_obs(const Context& ctx) {
  const auto model = load_or_sample(ctx.cfg);
  const auto obs = parse_observable(ctx.cfg.at("obs").get<std::string>(),
                                    ctx.cfg.at("eps").get<std::string>(), model.size());
  const auto grid = uniform_grid(number(ctx.cfg, "t_max"), count(ctx.cfg, "points"));
  const auto traj = expectation_trajectory(model, obs, grid);
  CsvWriter csv(ctx.digest, {"t", "value"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    csv.row({format_double(traj.times[k]), format_double(traj.values[k].real())});
  }
  ctx.emit(".csv", csv.str());
  ctx.emit_json("_model.json", {{"model", model_to_json(model)}});
}

void run_sweep(const Context& ctx) {
  const json& list = ctx.cfg.at("n_list");
  if (!list.is_array() || list.empty()) bad_config("n_list must be a non-empty array");
  std::vector<std::size_t> n_list;
  for (const auto& v : list) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      bad_config("n_list entries must be positive integers");
    }
    n_list.push_back(v.get<std::size_t>());
  }
  SweepSettings settings;
  settings.seeds = count(ctx.cfg, "seeds");
  settings.theta = number(ctx.cfg, "theta");
  settings.window = number(ctx.cfg, "window");
  settings.t_max = number(ctx.cfg, "t_max");
  settings.points = count(ctx.cfg, "points");
  settings.coeff_dist = ctx.cfg.at("coeff_dist").get<std::string>();
  settings.g_dist = ctx.cfg.at("g_dist").get<std::string>();
  settings.a = amplitude(ctx.cfg, "a");
  settings.b = amplitude(ctx.cfg, "b");
  const auto result = n_scaling_sweep(n_list, seed_of(ctx.cfg), settings);

  CsvWriter csv(ctx.digest, {"n", "seed", "t_d", "sup_late", "decohered"});
  for (const auto& row : result.rows) {
    csv.row({std::to_string(row.n), std::to_string(row.seed), format_double(row.verdict.t_d),
             format_double(row.verdict.sup_late), row.verdict.decohered ? "1" : "0"});
  }
  ctx.emit(".csv", csv.str());

  json summary = json::array();
  for (const auto& s : result.summary) {
    summary.push_back({{"n", s.n},
                       {"median_sup_late", s.median_sup_late},
                       {"decohered", s.decohered},
                       {"seeds", settings.seeds}});
  }
  ctx.emit_json("_summary.json",
                {{"summary", summary}, {"median_decreasing", result.median_decreasing}});
}

void run_oracle_check(const Context& ctx, RunResult& result) {
  const std::size_t n = count(ctx.cfg, "n");
  const std::size_t trials = count(ctx.cfg, "trials");
  const std::size_t times = count(ctx.cfg, "times");
  const std::size_t cap = count(ctx.cfg, "oracle_cap");
  const double t_max = number(ctx.cfg, "t_max");
  if (n > cap) {
    throw Error(ErrorCode::kResourceCap, "oracle-check with N=" + std::to_string(n) +
                                             " exceeds oracle_cap=" + std::to_string(cap));
  }
  const std::uint64_t seed = seed_of(ctx.cfg);

  double max_expectation = 0.0;
  double max_overlap = 0.0;
  double max_reduced = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto model = sample_model(n, seed + k, ctx.cfg.at("coeff_dist").get<std::string>(),
                                    ctx.cfg.at("g_dist").get<std::string>(),
                                    amplitude(ctx.cfg, "a"), amplitude(ctx.cfg, "b"));
    const auto obs = sample_observable(n, seed + k);
    const auto initial = oracle::build_initial(model, cap);
    auto rng = SplitMix64::stream(seed + k, static_cast<std::uint32_t>(StreamDomain::kSampleTimes), 1);
    for (std::size_t m = 0; m < times; ++m) {
      const double t = t_max * rng.uniform() / model.mean_coupling();
      const auto state = oracle::evolve(initial, model, t);
      max_expectation = std::max(
          max_expectation,
          std::abs(expectation(model, obs, t) - oracle::oracle_expectation(state, obs)));
      max_overlap = std::max(
          max_overlap, std::abs(overlap_r(model, t) - oracle::oracle_overlap(model, t, cap)));
      const auto fast = reduced_system_state(model, t);
      const auto slow = oracle::partial_trace(state);
      max_reduced = std::max({max_reduced, std::abs(fast.rho00 - slow.rho00),
                              std::abs(fast.rho01 - slow.rho01),
                              std::abs(fast.rho10 - slow.rho10),
                              std::abs(fast.rho11 - slow.rho11)});
    }
  }
  const bool pass = max_expectation <= kOracleTolerance && max_overlap <= kOracleTolerance &&
                    max_reduced <= kOracleTolerance;
  ctx.emit_json(".json", {{"max_abs_diff_expectation", max_expectation},
                          {"max_abs_diff_overlap", max_overlap},
                          {"max_abs_diff_reduced_state", max_reduced},
                          {"tolerance", kOracleTolerance},
                          {"pass", pass}});
  if (!pass) {
    result.status = ExitStatus::kCheckFailed;
    result.message = "analytic and oracle values differ by more than 1e-10";
  }
}

void run_recurrence(const Context& ctx, RunResult& result) {
  const double g0 = number(ctx.cfg, "g_base");
  if (!(g0 > 0.0)) bad_config("g_base must be positive");
  const auto model = sample_model(count(ctx.cfg, "n"), seed_of(ctx.cfg),
                                  ctx.cfg.at("coeff_dist").get<std::string>(),
                                  "commensurate:" + format_double(g0), amplitude(ctx.cfg, "a"),
                                  amplitude(ctx.cfg, "b"));
  const double period = 2.0 * std::numbers::pi / g0;
  const double revival = recurrence_check(model, period);
  const double quarter = std::abs(overlap_r(model, period / 4.0));

  // Periodicity of a generic observable across one recurrence period.
  const auto obs = sample_observable(model.size(), seed_of(ctx.cfg));
  auto rng = SplitMix64::stream(seed_of(ctx.cfg),
                                static_cast<std::uint32_t>(StreamDomain::kSampleTimes), 2);
  double drift = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double t = period * rng.uniform();
    drift = std::max(drift,
                     std::abs(expectation(model, obs, t + period) - expectation(model, obs, t)));
  }
  const bool revival_ok = std::abs(revival - 1.0) <= kRevivalTolerance;
  const bool periodic_ok = drift <= kRevivalTolerance;
  ctx.emit_json(".json", {{"period", period},
                          {"abs_r_at_period", revival},
                          {"abs_r_at_quarter_period", quarter},
                          {"observable_period_drift", drift},
                          {"revival_ok", revival_ok},
                          {"periodic_ok", periodic_ok}});
  if (!revival_ok || !periodic_ok) {
    result.status = ExitStatus::kCheckFailed;
    result.message = "commensurate model failed to revive";
  }
}

void run_timescale(const Context& ctx) {
  const auto report = timescale_report(number(ctx.cfg, "v1"), number(ctx.cfg, "v2"));
  ctx.emit_json(".json", {{"V1_eV", report.v1_ev},
                          {"V2_eV", report.v2_ev},
                          {"t_DS_s", report.t_ds_s},
                          {"t_DU_s", report.t_du_s},
                          {"hbar_eV_s", kHbarEvSeconds},
                          {"hierarchy_ok", report.hierarchy_ok}});
}

void run_fluctuation(const Context& ctx) {
  const auto model = load_or_sample(ctx.cfg);
  const auto stats = fluctuation_stats(model, number(ctx.cfg, "t_start"),
                                       number(ctx.cfg, "t_end"), count(ctx.cfg, "samples"),
                                       seed_of(ctx.cfg));
  ctx.emit_json(".json", {{"mean_r2", stats.mean_r2},
                          {"predicted_r2", stats.predicted_r2},
                          {"ratio", finite_or_null(stats.mean_r2 / stats.predicted_r2)}});
}

ExitStatus status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kResourceCap:
      return ExitStatus::kResourceCap;
    case ErrorCode::kIo:
      return ExitStatus::kIo;
    default:
      return ExitStatus::kInvalidConfig;
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_digest(const json& canonical) {
  json digested = canonical;
  digested.erase("output");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(digested.dump()));
  return buf;
}

json model_to_json(const SpinBathModel& model) {
  auto pair = [](Complex z) { return json::array({z.real(), z.imag()}); };
  json sites = json::array();
  for (const Site& s : model.sites()) {
    sites.push_back({{"alpha", pair(s.alpha)}, {"beta", pair(s.beta)}, {"g", s.g}});
  }
  return {{"a", pair(model.a())}, {"b", pair(model.b())}, {"sites", sites}};
}

SpinBathModel model_from_json(const json& doc) {
  try {
    std::vector<Site> sites;
    for (const auto& s : doc.at("sites")) {
      sites.push_back({amplitude(s, "alpha"), amplitude(s, "beta"), s.at("g").get<double>()});
    }
    return make_model(amplitude(doc, "a"), amplitude(doc, "b"), std::move(sites));
  } catch (const json::exception& e) {
    bad_config(std::string("malformed model document: ") + e.what());
  }
}

Matrix2 parse_site_matrix(std::string_view spec) {
  if (spec == "sx") return Matrix2::pauli_x();
  if (spec == "sy") return Matrix2::pauli_y();
  if (spec == "sz") return Matrix2::pauli_z();
  if (spec == "id") return Matrix2::identity();
  const auto v = parse_list(spec);
  if (v.size() != 4) bad_config("site matrix needs sx|sy|sz|id or 4 numbers");
  return Matrix2::hermitian(v[0], {v[1], v[2]}, v[3]);
}

RelevantObservable parse_observable(std::string_view spec, std::string_view eps,
                                    std::size_t n) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) bad_config("observable spec needs a ':'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (kind == "eid") {
    const auto v = parse_list(rest);
    if (v.size() != 4) bad_config("eid observable needs s00,s01re,s01im,s11");
    return eid_observable(v[0], {v[1], v[2]}, v[3], n);
  }
  if (kind == "single-site") {
    const auto sep = rest.find(':');
    const std::string_view index = rest.substr(0, sep);
    std::size_t j = 0;
    auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), j);
    if (ec != std::errc{} || ptr != index.data() + index.size()) {
      bad_config("bad site index '" + std::string(index) + "'");
    }
    const std::string_view matrix = sep == std::string_view::npos ? eps : rest.substr(sep + 1);
    if (matrix.empty()) bad_config("single-site observable needs an eps matrix");
    return single_site_observable(SiteIndex{j}, parse_site_matrix(matrix), n);
  }
  if (kind == "random") {
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) bad_config("bad random seed");
    return sample_observable(n, seed);
  }
  throw Error(ErrorCode::kUnknownName, "unknown observable kind '" + std::string(kind) + "'");
}

std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& [name, defaults] : command_defaults()) names.push_back(name);
  return names;
}

json resolve_config(const json& config) {
  if (!config.is_object()) bad_config("config must be a JSON object");
  if (!config.contains("command") || !config["command"].is_string()) {
    bad_config("config needs a string 'command'");
  }
  const std::string command = config["command"].get<std::string>();
  const auto it = command_defaults().find(command);
  if (it == command_defaults().end()) {
    throw Error(ErrorCode::kUnknownName, "unknown command '" + command + "'");
  }
  json resolved = it->second;
  for (const auto& [key, value] : config.items()) {
    if (!resolved.contains(key)) {
      bad_config("unknown key '" + key + "' for command " + command);
    }
    const json& def = resolved[key];
    if (kCountKeys.contains(key)) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        bad_config("key '" + key + "' must be a non-negative integer");
      }
      resolved[key] = value.get<std::uint64_t>();
      continue;
    }
    const bool ok = def.is_number() ? value.is_number() : value.type() == def.type();
    if (!ok) bad_config("key '" + key + "' has the wrong type");
    // Integral numbers stored as floats would change the digest.
    resolved[key] = def.is_number_float() ? json(value.get<double>()) : value;
  }
  return resolved;
}

RunResult run(const json& config, const fs::path& out_dir) {
  RunResult result;
  try {
    Context ctx;
    ctx.cfg = resolve_config(config);
    ctx.digest = config_digest(ctx.cfg);
    ctx.out_dir = out_dir;
    ctx.stem = ctx.cfg.at("output").get<std::string>();
    if (ctx.stem.empty()) ctx.stem = ctx.cfg.at("command").get<std::string>();
    ctx.result = &result;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());

    const std::string command = ctx.cfg.at("command").get<std::string>();
    if (command == "simulate-r") run_simulate_r(ctx);
    else if (command == "simulate-obs") run_simulate_obs(ctx);
    else if (command == "sweep-n") run_sweep(ctx);
    else if (command == "oracle-check") run_oracle_check(ctx, result);
    else if (command == "recurrence") run_recurrence(ctx, result);
    else if (command == "timescale") run_timescale(ctx);
    else if (command == "fluctuation") run_fluctuation(ctx);
  } catch (const Error& e) {
    result.status = status_for(e.code());
    result.message = e.what();
  } catch (const json::exception& e) {
    result.status = ExitStatus::kInvalidConfig;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.status = ExitStatus::kInvalidConfig;
    result.message = e.what();
  }
  return result;
}

}  // namespace spinbath
