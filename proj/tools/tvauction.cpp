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
// Command-line front end.
//
//   tvauction --preset fig2a [--seed N] [--T 2000] [--out DIR] [--svg]
//   tvauction --config run.cfg [overrides]
//   tvauction --validate [--samples N] [--seed N]
//
// Exit status: 0 success (or battery all-pass), 1 validation failure,
// 2 usage or configuration error.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tvauction/runner.hpp"
#include "tvauction/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

std::string describe(const tvauction::RunConfig& rc,
                     const tvauction::RunOutputs& out) {
  const tvauction::RunSummary& s = out.result.summary;
  std::ostringstream os;
  os << rc.label << ": seed=" << s.seed << " T=" << s.T
     << " verdict=" << tvauction::to_string(s.verdict);
  char buf[64];
  std::snprintf(buf, sizeof buf, " gap=%.6g path_rate=%.6g", s.gap,
                s.path_rate);
  os << buf;
  if (s.bound_low) {
    std::snprintf(buf, sizeof buf, " bound_low=%.6g", *s.bound_low);
    os << buf;
  }
  if (s.bound_high) {
    std::snprintf(buf, sizeof buf, " bound_high=%.6g", *s.bound_high);
    os << buf;
  }
  if (s.langevin_guard_triggers > 0) {
    os << " width_guard_triggers=" << s.langevin_guard_triggers;
  }
  os << "\n  wrote " << out.trace_csv.string() << ", "
     << out.summary_txt.string();
  for (const auto& p : out.svg_files) os << ", " << p.string();
  return os.str();
}

int run_validation(std::int64_t samples, std::uint64_t seed) {
  const auto results = tvauction::run_validation_battery(samples, seed);
  std::printf("%-32s %14s %12s  %s\n", "check", "observed", "tolerance",
              "result");
  bool all_pass = true;
  for (const tvauction::CheckResult& r : results) {
    std::printf("%-32s %14.6g %12.4g  %s%s%s\n", r.name.c_str(), r.observed,
                r.tolerance, r.pass ? "PASS" : "FAIL",
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("overall: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Time-varying first-price auction laboratory: adaptive bidding "
      "dynamics vs the second-price benchmark"};
  app.get_formatter()->column_width(28);

  std::string preset;
  std::string config_path;
  bool validate = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> T;
  std::optional<double> step;
  std::optional<double> rate;
  std::optional<int> n;
  std::optional<std::int64_t> record_every;
  std::string out_dir;
  std::int64_t samples = 1'000'000;
  int batch = 1;
  bool svg = false;

  std::string preset_help = "named preset (";
  for (std::size_t i = 0; i < tvauction::preset_names().size(); ++i) {
    preset_help += (i ? ", " : "") + tvauction::preset_names()[i];
  }
  preset_help += ")";

  app.add_option("--preset", preset, preset_help);
  app.add_option("--config", config_path, "run configuration file");
  app.add_flag("--validate", validate, "run the cross-validation battery");
  app.add_option("--seed", seed, "random seed (default 1)");
  app.add_option("--T", T, "horizon override");
  app.add_option("--step", step, "integration step override");
  app.add_option("--rate", rate, "learning-rate override");
  app.add_option("--n", n, "bidder-count override");
  app.add_option("--record-every", record_every,
                 "trace thinning stride override");
  app.add_option("--out", out_dir,
                 "output directory (default $TVAUCTION_OUT or .)");
  app.add_option("--samples", samples,
                 "Monte-Carlo samples for --validate (default 1e6)");
  app.add_option("--batch", batch,
                 "run this many consecutive seeds in parallel");
  app.add_flag("--svg", svg, "also write SVG charts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  const int modes =
      (!preset.empty() ? 1 : 0) + (!config_path.empty() ? 1 : 0) +
      (validate ? 1 : 0);
  if (modes != 1) {
    std::cerr << "exactly one of --preset, --config, --validate is required\n";
    return kExitUsage;
  }

  try {
    if (validate) {
      return run_validation(samples, seed.value_or(1));
    }

    tvauction::RunConfig rc = !preset.empty()
                                  ? tvauction::preset_config(preset)
                                  : tvauction::parse_config_file(config_path);
    if (seed) rc.seed = *seed;
    if (T) rc.T = *T;
    if (step) rc.h = *step;
    if (rate) rc.eta = *rate;
    if (n) rc.n = *n;
    if (record_every) rc.record_every = *record_every;

    if (out_dir.empty()) {
      if (const char* env = std::getenv("TVAUCTION_OUT")) out_dir = env;
      if (out_dir.empty()) out_dir = ".";
    }

    if (batch < 1) {
      std::cerr << "--batch must be >= 1\n";
      return kExitUsage;
    }
    if (batch == 1) {
      const auto out = tvauction::execute_and_write(rc, out_dir, svg);
      std::cout << describe(rc, out) << "\n";
      return kExitOk;
    }

    // Batch mode: consecutive seeds, one thread each, reported in order.
    std::vector<tvauction::RunConfig> configs;
    for (int i = 0; i < batch; ++i) {
      tvauction::RunConfig one = rc;
      one.seed = rc.seed + static_cast<std::uint64_t>(i);
      one.label = rc.label + "_seed" + std::to_string(one.seed);
      configs.push_back(std::move(one));
    }
    std::vector<std::string> lines(configs.size());
    std::vector<std::string> errors(configs.size());
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(configs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
          try {
            const auto out =
                tvauction::execute_and_write(configs[i], out_dir, svg);
            lines[i] = describe(configs[i], out);
          } catch (const std::exception& e) {
            errors[i] = e.what();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    bool failed = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (!errors[i].empty()) {
        std::cerr << configs[i].label << ": error: " << errors[i] << "\n";
        failed = true;
      } else {
        std::cout << lines[i] << "\n";
      }
    }
    return failed ? kExitUsage : kExitOk;
  } catch (const tvauction::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
