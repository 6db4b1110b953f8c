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
// Run configuration: named presets reproducing the reference experiments,
// and a flat `key = value` configuration-file parser with line and field
// diagnostics.

#ifndef TVAUCTION_RUN_CONFIG_HPP_
#define TVAUCTION_RUN_CONFIG_HPP_

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tvauction/environments.hpp"

namespace tvauction {

struct RunConfig {
  std::string label = "run";
  int n = 10;
  double eta = 2.0e3;
  double h = 1.0e-3;
  double T = 2000.0;
  std::uint64_t seed = 1;
  std::int64_t record_every = 100;
  ScheduleSpec schedule;  // monostate until a schedule is chosen
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "figA1a",
      "figA1b"};
  return names;
}

// Named experiment presets.  All use n = 10, eta = 2000, h = 1e-3,
// T = 2000, seed 1, record_every 100.
//
//   fig2a   two-state random {(10,20),(20,40)}, widths increasing
//   fig2b   two-state random {(10,20),(20,30)}, equal widths
//   fig2c   two-state random {(10,30),(20,30)}, widths decreasing
//   fig3a   mean-reverting targets (20,40), noise (a_m,a_M) = (5,10)
//   fig3b   same targets, noise (5,5): width stays constant
//   fig3c   same targets, noise (5,0): width shrinks when v_m rises
//   figA1a  four states cycled low->(10,30)->(20,40)->(20,30)
//   figA1b  the same four states cycled in the reverse pattern
inline RunConfig preset_config(std::string_view name) {
  RunConfig rc;
  rc.label = std::string(name);
  const auto two_state = [](ValueDistribution a, ValueDistribution b) {
    return FiniteStateSchedule({a, b}, TransitionMode::kTwoStateRandom, 0.0,
                               2.0);
  };
  const std::vector<ValueDistribution> four_states = {
      {10.0, 20.0}, {10.0, 30.0}, {20.0, 30.0}, {20.0, 40.0}};
  if (name == "fig2a") {
    rc.schedule = two_state({10.0, 20.0}, {20.0, 40.0});
  } else if (name == "fig2b") {
    rc.schedule = two_state({10.0, 20.0}, {20.0, 30.0});
  } else if (name == "fig2c") {
    rc.schedule = two_state({10.0, 30.0}, {20.0, 30.0});
  } else if (name == "fig3a") {
    rc.schedule = LangevinSchedule(20.0, 40.0, 5.0, 10.0);
  } else if (name == "fig3b") {
    rc.schedule = LangevinSchedule(20.0, 40.0, 5.0, 5.0);
  } else if (name == "fig3c") {
    rc.schedule = LangevinSchedule(20.0, 40.0, 5.0, 0.0);
  } else if (name == "figA1a") {
    rc.schedule = FiniteStateSchedule(four_states, TransitionMode::kCyclic,
                                      0.0, 2.0, {0, 1, 3, 2});
  } else if (name == "figA1b") {
    rc.schedule = FiniteStateSchedule(four_states, TransitionMode::kCyclic,
                                      0.0, 2.0, {0, 2, 3, 1});
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return rc;
}

namespace internal {

struct ConfigLine {
  std::string value;
  int line = 0;
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] inline void config_fail(const std::string& context, int line,
                                     const std::string& message) {
  std::ostringstream os;
  os << context << ":" << line << ": " << message;
  throw ConfigError(os.str());
}

inline double parse_real(const std::string& context, int line,
                         const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    config_fail(context, line, "field '" + key + "': not a number: '" + value + "'");
  }
  return out;
}

template <typename Int>
inline Int parse_int(const std::string& context, int line,
                     const std::string& key, const std::string& value) {
  Int out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    config_fail(context, line, "field '" + key + "': not an integer: '" + value + "'");
  }
  return out;
}

// `(a,b) (c,d) ...`, separated by whitespace.
inline std::vector<ValueDistribution> parse_states(const std::string& context,
                                                   int line,
                                                   const std::string& value) {
  std::vector<ValueDistribution> states;
  std::size_t pos = 0;
  while (pos < value.size()) {
    while (pos < value.size() && (value[pos] == ' ' || value[pos] == '\t')) {
      ++pos;
    }
    if (pos >= value.size()) break;
    if (value[pos] != '(') {
      config_fail(context, line, "field 'states': expected '(' in '" + value + "'");
    }
    const auto close = value.find(')', pos);
    if (close == std::string::npos) {
      config_fail(context, line, "field 'states': missing ')'");
    }
    const std::string pair = value.substr(pos + 1, close - pos - 1);
    const auto comma = pair.find(',');
    if (comma == std::string::npos) {
      config_fail(context, line, "field 'states': expected '(v_m,v_M)'");
    }
    const double lo = parse_real(context, line, "states", trim(pair.substr(0, comma)));
    const double hi = parse_real(context, line, "states", trim(pair.substr(comma + 1)));
    try {
      states.emplace_back(lo, hi);
    } catch (const ConfigError& e) {
      config_fail(context, line, "field 'states': " + std::string(e.what()));
    }
    pos = close + 1;
  }
  if (states.empty()) {
    config_fail(context, line, "field 'states': no states given");
  }
  return states;
}

inline std::vector<int> parse_index_list(const std::string& context, int line,
                                         const std::string& value) {
  std::vector<int> indices;
  std::istringstream is(value);
  std::string token;
  while (is >> token) {
    indices.push_back(parse_int<int>(context, line, "cycle_order", token));
  }
  return indices;
}

}  // namespace internal

// Parses a flat `key = value` configuration.  `#` starts a comment; blank
// lines are skipped; keys may appear once.  `context` names the source in
// diagnostics (usually the file path).
inline RunConfig parse_config_text(const std::string& text,
                                   const std::string& context,
                                   const std::string& label) {
  std::map<std::string, internal::ConfigLine> kv;
  {
    std::istringstream is(text);
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
        internal::config_fail(context, line_no,
                              "expected 'key = value', got '" + line + "'");
      }
      const std::string key = internal::trim(line.substr(0, eq));
      const std::string value = internal::trim(line.substr(eq + 1));
      if (key.empty()) internal::config_fail(context, line_no, "empty key");
      if (kv.count(key)) {
        internal::config_fail(context, line_no, "duplicate key '" + key + "'");
      }
      kv[key] = {value, line_no};
    }
  }

  RunConfig rc;
  rc.label = label;
  const auto take = [&](const char* key) -> std::optional<internal::ConfigLine> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto out = it->second;
    kv.erase(it);
    return out;
  };

  if (const auto e = take("n")) {
    rc.n = internal::parse_int<int>(context, e->line, "n", e->value);
  }
  if (const auto e = take("eta")) {
    rc.eta = internal::parse_real(context, e->line, "eta", e->value);
  }
  if (const auto e = take("h")) {
    rc.h = internal::parse_real(context, e->line, "h", e->value);
  }
  if (const auto e = take("T")) {
    rc.T = internal::parse_real(context, e->line, "T", e->value);
  }
  if (const auto e = take("seed")) {
    rc.seed =
        internal::parse_int<std::uint64_t>(context, e->line, "seed", e->value);
  }
  if (const auto e = take("record_every")) {
    rc.record_every = internal::parse_int<std::int64_t>(
        context, e->line, "record_every", e->value);
  }

  const auto schedule = take("schedule");
  if (!schedule) {
    internal::config_fail(context, 0, "missing required key 'schedule'");
  }
  if (schedule->value == "finite") {
    const auto states_entry = take("states");
    if (!states_entry) {
      internal::config_fail(context, schedule->line,
                            "schedule=finite requires 'states'");
    }
    const auto states = internal::parse_states(context, states_entry->line,
                                               states_entry->value);
    TransitionMode mode = TransitionMode::kCyclic;
    int mode_line = schedule->line;
    if (const auto e = take("transition")) {
      mode_line = e->line;
      try {
        mode = transition_mode_from_string(e->value);
      } catch (const ConfigError& err) {
        internal::config_fail(context, e->line,
                              "field 'transition': " + std::string(err.what()));
      }
    }
    double stay_min = 0.0, stay_max = 2.0;
    if (const auto e = take("stay_min")) {
      stay_min = internal::parse_real(context, e->line, "stay_min", e->value);
    }
    if (const auto e = take("stay_max")) {
      stay_max = internal::parse_real(context, e->line, "stay_max", e->value);
    }
    std::vector<int> order;
    if (const auto e = take("cycle_order")) {
      order = internal::parse_index_list(context, e->line, e->value);
    }
    try {
      rc.schedule = FiniteStateSchedule(states, mode, stay_min, stay_max, order);
    } catch (const ConfigError& e) {
      internal::config_fail(context, mode_line,
                            "invalid finite schedule: " + std::string(e.what()));
    }
  } else if (schedule->value == "langevin") {
    const auto need = [&](const char* key) -> internal::ConfigLine {
      const auto e = take(key);
      if (!e) {
        internal::config_fail(context, schedule->line,
                              "schedule=langevin requires '" +
                                  std::string(key) + "'");
      }
      return *e;
    };
    const auto vm = need("vbar_m");
    const auto vM = need("vbar_M");
    const auto am = need("a_m");
    const auto aM = need("a_M");
    try {
      rc.schedule = LangevinSchedule(
          internal::parse_real(context, vm.line, "vbar_m", vm.value),
          internal::parse_real(context, vM.line, "vbar_M", vM.value),
          internal::parse_real(context, am.line, "a_m", am.value),
          internal::parse_real(context, aM.line, "a_M", aM.value));
    } catch (const ConfigError& e) {
      internal::config_fail(context, schedule->line,
                            "invalid langevin schedule: " + std::string(e.what()));
    }
  } else {
    internal::config_fail(
        context, schedule->line,
        "field 'schedule': must be 'finite' or 'langevin', got '" +
            schedule->value + "'");
  }

  if (!kv.empty()) {
    const auto& [key, entry] = *kv.begin();
    internal::config_fail(context, entry.line, "unknown key '" + key + "'");
  }
  return rc;
}

// Reads a configuration file; the run label is the file stem, so a file
// named fig2a.cfg reproduces the fig2a preset byte for byte.
inline RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string(), path.stem().string());
}

}  // namespace tvauction

#endif  // TVAUCTION_RUN_CONFIG_HPP_
