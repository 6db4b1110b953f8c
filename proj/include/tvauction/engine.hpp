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
// Simulation engine: integrates the strategy dynamics against a realized
// environment path and accumulates the time-average payoff gap between
// the adapting first-price bidders and the second-price benchmark.

#ifndef TVAUCTION_ENGINE_HPP_
#define TVAUCTION_ENGINE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tvauction/environments.hpp"
#include "tvauction/learning.hpp"

namespace tvauction {

// Neumaier compensated accumulator; value() folds the carry back in.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

enum class Verdict { kFirstHigher, kSecondHigher, kEquivalent, kUndetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kFirstHigher: return "FIRST_HIGHER";
    case Verdict::kSecondHigher: return "SECOND_HIGHER";
    case Verdict::kEquivalent: return "EQUIVALENT";
    case Verdict::kUndetermined: return "UNDETERMINED";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "FIRST_HIGHER") return Verdict::kFirstHigher;
  if (s == "SECOND_HIGHER") return Verdict::kSecondHigher;
  if (s == "EQUIVALENT") return Verdict::kEquivalent;
  if (s == "UNDETERMINED") return Verdict::kUndetermined;
  throw ConfigError("unknown verdict '" + s + "'");
}

// |gap| within the numerical-noise envelope reads as equivalence; just
// above it stays undetermined; beyond that the sign decides.
inline Verdict classify_gap(double gap, double envelope) {
  const double mag = std::abs(gap);
  if (mag <= envelope) return Verdict::kEquivalent;
  if (mag <= 1.1 * envelope) return Verdict::kUndetermined;
  return gap > 0.0 ? Verdict::kFirstHigher : Verdict::kSecondHigher;
}

struct TraceRow {
  double t;
  double x;
  double v_m;
  double v_M;
  double w_dagger;
  double w_star;
  double cum_avg_dagger;
  double cum_avg_star;
};

struct SimulationTrace {
  std::vector<TraceRow> rows;
};

struct RunSummary {
  double T = 0.0;
  double w_bar_dagger = 0.0;
  double w_bar_star = 0.0;
  double gap = 0.0;
  double path_length = 0.0;
  double path_rate = 0.0;
  double total_ascent = 0.0;
  double total_descent = 0.0;
  double x_initial = 0.0;
  double x_final = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double dv_max = 0.0;
  double envelope = 0.0;
  std::optional<double> bound_low;
  std::optional<double> bound_high;
  std::optional<double> exact_two_state_gap;
  Verdict verdict = Verdict::kUndetermined;
  std::uint64_t seed = 0;
  std::int64_t langevin_guard_triggers = 0;
};

struct RunResult {
  SimulationTrace trace;
  RunSummary summary;
};

namespace internal {

// States must come in canonical order with strictly positive v_m steps
// implied by the canonical sort; only the widths matter here.
inline void require_sorted(const std::vector<ValueDistribution>& states,
                           const char* op) {
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].v_m < states[i - 1].v_m) {
      throw HypothesisError(std::string(op) +
                            ": states must be in canonical (sorted) order");
    }
  }
}

}  // namespace internal

// Lower bound on the asymptotic gap for strictly width-increasing state
// sets: (1/2) alpha min_k(dv_{k+1} - dv_k) * path_rate / eta.
inline double theorem_lower_bound(const RunSummary& summary,
                                  const std::vector<ValueDistribution>& states,
                                  const AuctionConfig& cfg,
                                  const DynamicsConfig& dyn) {
  if (states.size() < 2) {
    throw HypothesisError("theorem_lower_bound: needs at least 2 states");
  }
  internal::require_sorted(states, "theorem_lower_bound");
  double min_diff = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double diff = states[i].width() - states[i - 1].width();
    if (!(diff > 0.0)) {
      throw HypothesisError(
          "theorem_lower_bound: widths must be strictly increasing");
    }
    min_diff = std::min(min_diff, diff);
  }
  return 0.5 * cfg.alpha * min_diff * summary.path_rate / dyn.eta;
}

// Mirrored upper bound for strictly width-decreasing state sets (negative).
inline double theorem_upper_bound(const RunSummary& summary,
                                  const std::vector<ValueDistribution>& states,
                                  const AuctionConfig& cfg,
                                  const DynamicsConfig& dyn) {
  if (states.size() < 2) {
    throw HypothesisError("theorem_upper_bound: needs at least 2 states");
  }
  internal::require_sorted(states, "theorem_upper_bound");
  double max_diff = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double diff = states[i].width() - states[i - 1].width();
    if (!(diff < 0.0)) {
      throw HypothesisError(
          "theorem_upper_bound: widths must be strictly decreasing");
    }
    max_diff = std::max(max_diff, diff);
  }
  return 0.5 * cfg.alpha * max_diff * summary.path_rate / dyn.eta;
}

// Exact asymptotic gap for two-state schedules:
// (1/2) alpha (dv_2 - dv_1) * path_rate / eta.
inline double exact_two_state_gap(const RunSummary& summary,
                                  const std::vector<ValueDistribution>& states,
                                  const AuctionConfig& cfg,
                                  const DynamicsConfig& dyn) {
  if (states.size() != 2) {
    throw HypothesisError("exact_two_state_gap: needs exactly 2 states");
  }
  internal::require_sorted(states, "exact_two_state_gap");
  return 0.5 * cfg.alpha * (states[1].width() - states[0].width()) *
         summary.path_rate / dyn.eta;
}

// Largest residual of the pointwise identity w+ - w* = -(x - v_m)/n^2
// across trace rows.  A correct trace keeps this at rounding level.
inline double gap_identity_check(const SimulationTrace& trace,
                                 const AuctionConfig& cfg) {
  const double n_sq = static_cast<double>(cfg.n) * cfg.n;
  double worst = 0.0;
  for (const TraceRow& row : trace.rows) {
    const double resid =
        std::abs((row.w_dagger - row.w_star) + (row.x - row.v_m) / n_sq);
    worst = std::max(worst, resid);
  }
  return worst;
}

// Integrates x through N = T/h RK4 steps against a seeded environment path
// and returns the thinned trace plus run statistics.
//
// Time averages are accumulated per step: the second-price average is the
// left-Riemann sum of w*(d_k), and the payoff gap is accumulated through
// the realized displacements,
//   gap = alpha / (eta T) * sum_k dv_k (x_{k+1} - x_k),
// which telescopes exactly whenever the width is constant in time.  The
// first-price average is then w_bar_star + gap.
inline RunResult run(const AuctionConfig& cfg, const DynamicsConfig& dyn,
                     const ScheduleSpec& spec, double T, std::uint64_t seed,
                     std::int64_t record_every = 100) {
  if (!std::isfinite(T) || !(T > 0.0)) {
    throw ConfigError("run: T must be finite and > 0");
  }
  if (record_every < 1) {
    throw ConfigError("run: record_every must be >= 1");
  }
  const double steps_real = T / dyn.h;
  const auto n_steps = static_cast<std::int64_t>(std::llround(steps_real));
  if (n_steps < 1 ||
      std::abs(steps_real - static_cast<double>(n_steps)) >
          1.0e-9 * std::max(1.0, steps_real)) {
    throw ConfigError("run: T must be a positive integer multiple of h");
  }

  auto path = make_schedule_path(spec, dyn.h, seed);

  CompensatedSum w_star_sum;   // sum_k w*(d_k)
  CompensatedSum dv_dx_sum;    // sum_k dv_k (x_{k+1} - x_k)
  CompensatedSum path_length;  // sum_k |x_{k+1} - x_k|
  CompensatedSum ascent;
  CompensatedSum descent;

  RunResult out;
  out.trace.rows.reserve(
      static_cast<std::size_t>(n_steps / record_every) + 2);

  ValueDistribution d = path->at_step(0);
  double x = d.v_m;  // start at the equilibrium of the initial state
  const double x0 = x;
  double x_min = x, x_max = x;
  double dv_max = d.width();

  const auto push_row = [&](std::int64_t k, const ValueDistribution& dk) {
    const double t = static_cast<double>(k) * dyn.h;
    const double wd = homogeneous_payoff(cfg, dk, x);
    const double ws = equilibrium_payoff(cfg, dk);
    double ca_d = wd, ca_s = ws;
    if (k > 0) {
      ca_s = w_star_sum.value() * dyn.h / t;
      ca_d = ca_s + cfg.alpha * dv_dx_sum.value() / (dyn.eta * t);
    }
    out.trace.rows.push_back({t, x, dk.v_m, dk.v_M, wd, ws, ca_d, ca_s});
  };

  for (std::int64_t k = 0; k < n_steps; ++k) {
    if (k > 0) d = path->at_step(k);
    dv_max = std::max(dv_max, d.width());
    if (k % record_every == 0) push_row(k, d);
    w_star_sum.add(equilibrium_payoff(cfg, d));
    const LearnerState next =
        rk4_step(cfg, dyn, {x, static_cast<double>(k) * dyn.h}, d);
    const double dx = next.x - x;
    dv_dx_sum.add(d.width() * dx);
    path_length.add(std::abs(dx));
    if (dx >= 0.0) {
      ascent.add(dx);
    } else {
      descent.add(-dx);
    }
    x = next.x;
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
  }
  if (n_steps % record_every == 0) push_row(n_steps, d);

  RunSummary& s = out.summary;
  s.T = T;
  s.seed = seed;
  s.w_bar_star = w_star_sum.value() * dyn.h / T;
  s.gap = cfg.alpha * dv_dx_sum.value() / (dyn.eta * T);
  s.w_bar_dagger = s.w_bar_star + s.gap;
  s.path_length = path_length.value();
  s.path_rate = s.path_length / T;
  s.total_ascent = ascent.value();
  s.total_descent = descent.value();
  s.x_initial = x0;
  s.x_final = x;
  s.x_min = x_min;
  s.x_max = x_max;
  s.dv_max = dv_max;
  s.langevin_guard_triggers = path->guard_triggers();

  if (const auto* fs = std::get_if<FiniteStateSchedule>(&spec)) {
    const auto& st = fs->states();
    if (st.size() >= 2) {
      bool increasing = true, decreasing = true;
      for (std::size_t i = 1; i < st.size(); ++i) {
        const double diff = st[i].width() - st[i - 1].width();
        increasing = increasing && diff > 0.0;
        decreasing = decreasing && diff < 0.0;
      }
      if (increasing) s.bound_low = theorem_lower_bound(s, st, cfg, dyn);
      if (decreasing) s.bound_high = theorem_upper_bound(s, st, cfg, dyn);
      if (st.size() == 2) {
        s.exact_two_state_gap = exact_two_state_gap(s, st, cfg, dyn);
      }
    }
  }

  s.envelope = 3.0 * cfg.alpha * dv_max * (x_max - x_min) / (dyn.eta * T);
  s.verdict = classify_gap(s.gap, s.envelope);
  return out;
}

}  // namespace tvauction

#endif  // TVAUCTION_ENGINE_HPP_
