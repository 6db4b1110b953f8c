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
// Trace and summary serialization.  Numbers are printed with 17
// significant digits so parsing them back reproduces the exact doubles;
// files contain nothing machine- or time-dependent, so identical runs
// produce byte-identical files.

#ifndef TVAUCTION_TRACE_IO_HPP_
#define TVAUCTION_TRACE_IO_HPP_

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tvauction/engine.hpp"
#include "tvauction/run_config.hpp"

namespace tvauction {

inline constexpr char kTraceHeader[] =
    "t,x,v_m,v_M,w_dagger,w_star,cum_avg_dagger,cum_avg_star";

// Shortest-exact-round-trip is not needed; fixed %.17g is exact and stable.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& os, const SimulationTrace& trace) {
  os << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    os << format_double(r.t) << ',' << format_double(r.x) << ','
       << format_double(r.v_m) << ',' << format_double(r.v_M) << ','
       << format_double(r.w_dagger) << ',' << format_double(r.w_star) << ','
       << format_double(r.cum_avg_dagger) << ','
       << format_double(r.cum_avg_star) << '\n';
  }
}

inline void write_trace_csv(const std::filesystem::path& path,
                            const SimulationTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write trace file '" + path.string() + "'");
  write_trace_csv(os, trace);
}

namespace internal {

inline double parse_double_token(const std::string& token,
                                 const char* where) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), out);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ConfigError(std::string(where) + ": bad number '" + token + "'");
  }
  return out;
}

}  // namespace internal

inline SimulationTrace read_trace_csv(std::istream& is) {
  SimulationTrace trace;
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader) {
    throw ConfigError("trace: missing or malformed header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string token;
    double fields[8];
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(row, token, ',')) {
        throw ConfigError("trace: row with fewer than 8 fields");
      }
      fields[i] = internal::parse_double_token(token, "trace");
    }
    trace.rows.push_back({fields[0], fields[1], fields[2], fields[3],
                          fields[4], fields[5], fields[6], fields[7]});
  }
  return trace;
}

inline SimulationTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read trace file '" + path.string() + "'");
  return read_trace_csv(is);
}

// Summary file: `key = value` lines, parseable by the same rules as run
// configuration files.  The run outcome comes first, then a full echo of
// the parameters that produced it.
inline void write_summary(std::ostream& os, const RunConfig& rc,
                          const RunSummary& s) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("none");
  };
  os << "# run summary\n";
  os << "label = " << rc.label << '\n';
  os << "verdict = " << to_string(s.verdict) << '\n';
  os << "gap = " << format_double(s.gap) << '\n';
  os << "w_bar_dagger = " << format_double(s.w_bar_dagger) << '\n';
  os << "w_bar_star = " << format_double(s.w_bar_star) << '\n';
  os << "T = " << format_double(s.T) << '\n';
  os << "path_length = " << format_double(s.path_length) << '\n';
  os << "path_rate = " << format_double(s.path_rate) << '\n';
  os << "total_ascent = " << format_double(s.total_ascent) << '\n';
  os << "total_descent = " << format_double(s.total_descent) << '\n';
  os << "x_initial = " << format_double(s.x_initial) << '\n';
  os << "x_final = " << format_double(s.x_final) << '\n';
  os << "x_min = " << format_double(s.x_min) << '\n';
  os << "x_max = " << format_double(s.x_max) << '\n';
  os << "dv_max = " << format_double(s.dv_max) << '\n';
  os << "envelope = " << format_double(s.envelope) << '\n';
  os << "bound_low = " << opt(s.bound_low) << '\n';
  os << "bound_high = " << opt(s.bound_high) << '\n';
  os << "exact_two_state_gap = " << opt(s.exact_two_state_gap) << '\n';
  os << "langevin_guard_triggers = " << s.langevin_guard_triggers << '\n';
  os << "seed = " << s.seed << '\n';
  os << "# parameters\n";
  os << "n = " << rc.n << '\n';
  os << "eta = " << format_double(rc.eta) << '\n';
  os << "h = " << format_double(rc.h) << '\n';
  os << "record_every = " << rc.record_every << '\n';
  if (const auto* fs = std::get_if<FiniteStateSchedule>(&rc.schedule)) {
    os << "schedule = finite\n";
    os << "transition = " << to_string(fs->transition()) << '\n';
    os << "states =";
    for (const ValueDistribution& d : fs->states()) {
      os << " (" << format_double(d.v_m) << ',' << format_double(d.v_M) << ')';
    }
    os << '\n';
    os << "stay_min = " << format_double(fs->stay_min()) << '\n';
    os << "stay_max = " << format_double(fs->stay_max()) << '\n';
    if (fs->transition() != TransitionMode::kTwoStateRandom) {
      os << "cycle_order =";
      for (int i : fs->cycle_order()) os << ' ' << i;
      os << '\n';
    }
  } else if (const auto* ls = std::get_if<LangevinSchedule>(&rc.schedule)) {
    os << "schedule = langevin\n";
    os << "vbar_m = " << format_double(ls->v_bar_m) << '\n';
    os << "vbar_M = " << format_double(ls->v_bar_M) << '\n';
    os << "a_m = " << format_double(ls->a_m) << '\n';
    os << "a_M = " << format_double(ls->a_M) << '\n';
  } else {
    os << "schedule = none\n";
  }
}

inline void write_summary(const std::filesystem::path& path,
                          const RunConfig& rc, const RunSummary& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw ConfigError("cannot write summary file '" + path.string() + "'");
  }
  write_summary(os, rc, s);
}

// Parses the run-outcome block of a summary back into a RunSummary.  The
// doubles round-trip exactly.
inline RunSummary parse_summary(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = internal::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("summary:" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    kv[internal::trim(line.substr(0, eq))] = internal::trim(line.substr(eq + 1));
  }
  const auto need = [&](const char* key) -> std::string {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw ConfigError("summary: missing key '" + std::string(key) + "'");
    }
    return it->second;
  };
  const auto real = [&](const char* key) {
    return internal::parse_double_token(need(key), key);
  };
  const auto opt = [&](const char* key) -> std::optional<double> {
    const std::string v = need(key);
    if (v == "none") return std::nullopt;
    return internal::parse_double_token(v, key);
  };
  RunSummary s;
  s.verdict = verdict_from_string(need("verdict"));
  s.gap = real("gap");
  s.w_bar_dagger = real("w_bar_dagger");
  s.w_bar_star = real("w_bar_star");
  s.T = real("T");
  s.path_length = real("path_length");
  s.path_rate = real("path_rate");
  s.total_ascent = real("total_ascent");
  s.total_descent = real("total_descent");
  s.x_initial = real("x_initial");
  s.x_final = real("x_final");
  s.x_min = real("x_min");
  s.x_max = real("x_max");
  s.dv_max = real("dv_max");
  s.envelope = real("envelope");
  s.bound_low = opt("bound_low");
  s.bound_high = opt("bound_high");
  s.exact_two_state_gap = opt("exact_two_state_gap");
  {
    const std::string v = need("langevin_guard_triggers");
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ConfigError("summary: bad langevin_guard_triggers '" + v + "'");
    }
    s.langevin_guard_triggers = out;
  }
  {
    const std::string v = need("seed");
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ConfigError("summary: bad seed '" + v + "'");
    }
    s.seed = out;
  }
  return s;
}

inline RunSummary parse_summary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw ConfigError("cannot read summary file '" + path.string() + "'");
  }
  return parse_summary(is);
}

}  // namespace tvauction

#endif  // TVAUCTION_TRACE_IO_HPP_
