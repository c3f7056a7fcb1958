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

// Runs the installed command-line binary as a subprocess.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kOut = fs::temp_directory_path() / "spinbath_cli_test";

int spinbath(const std::string& args) {
  const std::string cmd = std::string("\"") + SPINBATH_CLI_PATH + "\" --out \"" +
                          kOut.string() + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("exit codes") {
  fs::remove_all(kOut);
  CHECK(spinbath("timescale") == 0);
  CHECK(spinbath("") == 1);
  CHECK(spinbath("frobnicate") == 1);
  CHECK(spinbath("simulate-r --n banana") == 1);
  CHECK(spinbath("simulate-r --t-max 1e") == 1);
  CHECK(spinbath("simulate-r --g-dist cauchy") == 1);
  CHECK(spinbath("oracle-check --n 30") == 2);
  CHECK(spinbath("--config /nonexistent/spinbath.json timescale") == 3);
  // An oracle cap below N is a resource failure, not a check failure.
  CHECK(spinbath("oracle-check --n 6 --oracle-cap 5") == 2);
}

TEST_CASE("failed check exits 4") {
  CHECK(spinbath("oracle-check --n 3 --trials 2 --times 3") == 0);
  // At tau ~ 1e10 the phases carry ~1e-6 rounding error, so the two
  // engines legitimately disagree beyond 1e-10.
  CHECK(spinbath("oracle-check --n 10 --trials 2 --t-max 1e10") == 4);
  CHECK(spinbath("recurrence --n 5 --g-base 0.5") == 0);
}

TEST_CASE("flags override config file values") {
  fs::create_directories(kOut);
  const fs::path cfg = kOut / "cfg.json";
  std::ofstream(cfg) << R"({"command":"simulate-r","n":4,"points":3,"t_max":2.0})";
  REQUIRE(spinbath("--config \"" + cfg.string() + "\" --output a simulate-r") == 0);
  REQUIRE(spinbath("--config \"" + cfg.string() + "\" --output b simulate-r --n 5") == 0);
  const std::string a = slurp(kOut / "a.csv");
  const std::string b = slurp(kOut / "b.csv");
  CHECK(a.rfind("# config_digest=", 0) == 0);
  CHECK(a.find("# version=spinbath 0.1.0\nt,re_r,im_r,abs_r\n") != std::string::npos);
  CHECK(a != b);
  REQUIRE(spinbath("--config \"" + cfg.string() + "\" --output c simulate-r") == 0);
  CHECK(slurp(kOut / "c.csv") == a);
}

TEST_CASE("environment variable selects the output directory") {
  const fs::path dir = kOut / "env";
  fs::remove_all(dir);
  const std::string cmd = "SPINBATH_OUT_DIR=\"" + dir.string() + "\" \"" + SPINBATH_CLI_PATH +
                          "\" timescale >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(raw) == 0);
  CHECK(fs::exists(dir / "timescale.json"));
}
