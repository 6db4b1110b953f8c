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
// Executes one configured run and writes its artifacts
// (<label>_trace.csv, <label>_summary.txt, optional SVG charts).

#ifndef TVAUCTION_RUNNER_HPP_
#define TVAUCTION_RUNNER_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "tvauction/engine.hpp"
#include "tvauction/run_config.hpp"
#include "tvauction/svg.hpp"
#include "tvauction/trace_io.hpp"

namespace tvauction {

struct RunOutputs {
  RunResult result;
  std::filesystem::path trace_csv;
  std::filesystem::path summary_txt;
  std::vector<std::filesystem::path> svg_files;
};

inline RunResult execute(const RunConfig& rc) {
  const AuctionConfig cfg(rc.n);
  const DynamicsConfig dyn(rc.eta, rc.h);
  return run(cfg, dyn, rc.schedule, rc.T, rc.seed, rc.record_every);
}

inline RunOutputs execute_and_write(const RunConfig& rc,
                                    const std::filesystem::path& out_dir,
                                    bool with_svg = false) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir)) {
    throw ConfigError("cannot create output directory '" + out_dir.string() +
                      "'");
  }
  RunOutputs out;
  out.result = execute(rc);
  out.trace_csv = out_dir / (rc.label + "_trace.csv");
  out.summary_txt = out_dir / (rc.label + "_summary.txt");
  write_trace_csv(out.trace_csv, out.result.trace);
  write_summary(out.summary_txt, rc, out.result.summary);
  if (with_svg) {
    const auto& rows = out.result.trace.rows;
    SvgSeries x_series{"x", "#c0392b", {}, {}};
    SvgSeries vm_series{"v_m", "#2980b9", {}, {}};
    SvgSeries vM_series{"v_M", "#27ae60", {}, {}};
    SvgSeries avg_d{"cum avg first-price payoff", "#c0392b", {}, {}};
    SvgSeries avg_s{"cum avg second-price payoff", "#2980b9", {}, {}};
    for (const TraceRow& r : rows) {
      x_series.xs.push_back(r.t);
      x_series.ys.push_back(r.x);
      vm_series.xs.push_back(r.t);
      vm_series.ys.push_back(r.v_m);
      vM_series.xs.push_back(r.t);
      vM_series.ys.push_back(r.v_M);
      avg_d.xs.push_back(r.t);
      avg_d.ys.push_back(r.cum_avg_dagger);
      avg_s.xs.push_back(r.t);
      avg_s.ys.push_back(r.cum_avg_star);
    }
    const auto x_path = out_dir / (rc.label + "_state.svg");
    const auto avg_path = out_dir / (rc.label + "_averages.svg");
    write_line_chart(x_path, rc.label + ": strategy vs support",
                     {x_series, vm_series, vM_series});
    write_line_chart(avg_path, rc.label + ": cumulative payoff averages",
                     {avg_d, avg_s});
    out.svg_files = {x_path, avg_path};
  }
  return out;
}

}  // namespace tvauction

#endif  // TVAUCTION_RUNNER_HPP_
