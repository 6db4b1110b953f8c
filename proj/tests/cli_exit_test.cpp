// Copyright 2026 The tvauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end exit-code and artifact checks for the command-line tool.
// Usage: cli_exit_tests <path-to-tvauction-binary>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__,      \
                   #cond);                                              \
      ++g_failures;                                                     \
    }                                                                   \
  } while (0)

int run_cmd(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) return {};
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <tvauction-binary>\n", argv[0]);
    return 1;
  }
  const std::string bin = std::string("\"") + argv[1] + "\"";
  const fs::path root = fs::temp_directory_path() / "tvauction_cli_test";
  fs::remove_all(root);
  fs::create_directories(root);

  // Usage errors exit with 2.
  CHECK(run_cmd(bin) == 2);
  CHECK(run_cmd(bin + " --preset fig2a --validate") == 2);
  CHECK(run_cmd(bin + " --preset no_such_preset") == 2);
  CHECK(run_cmd(bin + " --config " + (root / "missing.cfg").string()) == 2);
  CHECK(run_cmd(bin + " --preset fig2b --batch 0") == 2);
  CHECK(run_cmd(bin + " --frobnicate") == 2);
  // Horizon that is not a whole number of steps is a configuration error.
  CHECK(run_cmd(bin + " --preset fig2b --T 0.5005 --out " +
                (root / "bad").string()) == 2);
  // Help succeeds.
  CHECK(run_cmd(bin + " --help") == 0);

  // A short preset run writes its artifacts and succeeds.  The horizon
  // exceeds the maximum dwell time, so every seed sees at least one state
  // switch and the trace depends on the seed.
  const fs::path out1 = root / "out1";
  const fs::path out2 = root / "out2";
  const std::string short_run = " --preset fig2b --T 3 --seed 3 --out ";
  CHECK(run_cmd(bin + short_run + out1.string()) == 0);
  CHECK(fs::exists(out1 / "fig2b_trace.csv"));
  CHECK(fs::exists(out1 / "fig2b_summary.txt"));
  CHECK(!fs::exists(out1 / "fig2b_state.svg"));  // no --svg flag

  // The same invocation reproduces the files byte for byte.
  CHECK(run_cmd(bin + short_run + out2.string()) == 0);
  CHECK(!slurp(out1 / "fig2b_trace.csv").empty());
  CHECK(slurp(out1 / "fig2b_trace.csv") == slurp(out2 / "fig2b_trace.csv"));
  CHECK(slurp(out1 / "fig2b_summary.txt") ==
        slurp(out2 / "fig2b_summary.txt"));

  // A different seed changes the trace.
  const fs::path out3 = root / "out3";
  CHECK(run_cmd(bin + " --preset fig2b --T 3 --seed 4 --out " +
                out3.string()) == 0);
  CHECK(slurp(out1 / "fig2b_trace.csv") != slurp(out3 / "fig2b_trace.csv"));

  // SVG charts appear on request.
  const fs::path out4 = root / "out4";
  CHECK(run_cmd(bin + " --preset fig3b --T 0.5 --svg --out " +
                out4.string()) == 0);
  CHECK(fs::exists(out4 / "fig3b_state.svg"));
  CHECK(fs::exists(out4 / "fig3b_averages.svg"));

  // Config-file mode: label comes from the file stem.
  const fs::path cfg = root / "tiny.cfg";
  std::ofstream(cfg) << "schedule = langevin\nvbar_m = 20\nvbar_M = 40\n"
                        "a_m = 5\na_M = 5\nT = 0.5\n";
  const fs::path out5 = root / "out5";
  CHECK(run_cmd(bin + " --config " + cfg.string() + " --out " +
                out5.string()) == 0);
  CHECK(fs::exists(out5 / "tiny_trace.csv"));
  CHECK(fs::exists(out5 / "tiny_summary.txt"));

  // A malformed config is a configuration error.
  const fs::path bad_cfg = root / "bad.cfg";
  std::ofstream(bad_cfg) << "schedule = finite\nstates = (20,10)\n";
  CHECK(run_cmd(bin + " --config " + bad_cfg.string()) == 2);

  // Batch mode fans out over consecutive seeds.
  const fs::path out6 = root / "out6";
  CHECK(run_cmd(bin + " --preset fig2b --T 0.5 --seed 7 --batch 3 --out " +
                out6.string()) == 0);
  CHECK(fs::exists(out6 / "fig2b_seed7_trace.csv"));
  CHECK(fs::exists(out6 / "fig2b_seed8_trace.csv"));
  CHECK(fs::exists(out6 / "fig2b_seed9_summary.txt"));
  // Seed 7 alone reproduces the same bytes as its batch member.
  const fs::path out7 = root / "out7";
  CHECK(run_cmd(bin + " --preset fig2b --T 0.5 --seed 7 --out " +
                out7.string()) == 0);
  CHECK(slurp(out7 / "fig2b_trace.csv") ==
        slurp(out6 / "fig2b_seed7_trace.csv"));

  // Default output directory falls back to $TVAUCTION_OUT.
  const fs::path out8 = root / "out8";
  setenv("TVAUCTION_OUT", out8.string().c_str(), 1);
  CHECK(run_cmd(bin + " --preset fig2b --T 0.5") == 0);
  CHECK(fs::exists(out8 / "fig2b_summary.txt"));
  unsetenv("TVAUCTION_OUT");

  // Validation battery: a tiny budget is rejected, a small one passes.
  CHECK(run_cmd(bin + " --validate --samples 9999") == 2);
  CHECK(run_cmd(bin + " --validate --samples 65536") == 0);

  if (g_failures == 0) {
    std::printf("cli exit-code checks: all passed\n");
    return 0;
  }
  std::fprintf(stderr, "cli exit-code checks: %d failed\n", g_failures);
  return 1;
}
