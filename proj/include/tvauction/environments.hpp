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
// Time-varying value environments: piecewise-constant schedules over a
// finite set of distributions, and a mean-reverting (Ornstein-Uhlenbeck)
// diffusion of the support endpoints driven by one shared noise term.

#ifndef TVAUCTION_ENVIRONMENTS_HPP_
#define TVAUCTION_ENVIRONMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "tvauction/core_model.hpp"
#include "tvauction/rng.hpp"

namespace tvauction {

enum class TransitionMode { kTwoStateRandom, kCyclic, kExplicitSequence };

inline const char* to_string(TransitionMode m) {
  switch (m) {
    case TransitionMode::kTwoStateRandom: return "two-state-random";
    case TransitionMode::kCyclic: return "cyclic";
    case TransitionMode::kExplicitSequence: return "explicit-sequence";
  }
  return "?";
}

inline TransitionMode transition_mode_from_string(const std::string& s) {
  if (s == "two-state-random") return TransitionMode::kTwoStateRandom;
  if (s == "cyclic") return TransitionMode::kCyclic;
  if (s == "explicit-sequence") return TransitionMode::kExplicitSequence;
  throw ConfigError("unknown transition mode '" + s + "'");
}

// Piecewise-constant schedule over K distinct distributions.  States are
// stored in canonical order (lexicographic by (v_m, v_M), nondecreasing);
// cycle_order holds indices into that canonical order.  Dwell times are
// drawn uniformly from [stay_min, stay_max] and rounded up to the next
// multiple of the integration step, so switches land on step boundaries.
class FiniteStateSchedule {
 public:
  FiniteStateSchedule(std::vector<ValueDistribution> states,
                      TransitionMode transition, double stay_min = 0.0,
                      double stay_max = 2.0, std::vector<int> cycle_order = {})
      : transition_(transition), stay_min_(stay_min), stay_max_(stay_max) {
    if (states.empty()) {
      throw ConfigError("FiniteStateSchedule: states must be nonempty");
    }
    if (!std::isfinite(stay_min_) || !std::isfinite(stay_max_) ||
        !(stay_min_ >= 0.0) || !(stay_min_ < stay_max_)) {
      throw ConfigError(
          "FiniteStateSchedule: stay range must satisfy 0 <= stay_min < "
          "stay_max");
    }
    // Canonical ordering, remembering where each presentation index went.
    std::vector<int> perm(states.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      if (states[a].v_m != states[b].v_m) return states[a].v_m < states[b].v_m;
      return states[a].v_M < states[b].v_M;
    });
    std::vector<int> to_sorted(states.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      states_.push_back(states[perm[i]]);
      to_sorted[perm[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 1; i < states_.size(); ++i) {
      if (states_[i] == states_[i - 1]) {
        throw ConfigError("FiniteStateSchedule: states must be distinct");
      }
    }
    if (transition_ == TransitionMode::kTwoStateRandom) {
      if (states_.size() != 2) {
        throw ConfigError(
            "FiniteStateSchedule: two-state-random requires exactly 2 states");
      }
      if (!cycle_order.empty()) {
        throw ConfigError(
            "FiniteStateSchedule: cycle_order does not apply to "
            "two-state-random");
      }
    } else {
      if (cycle_order.empty()) {
        // Default visiting order: round-robin through canonical states.
        cycle_order.resize(states_.size());
        std::iota(cycle_order.begin(), cycle_order.end(), 0);
        cycle_order_ = cycle_order;
      } else {
        for (int idx : cycle_order) {
          if (idx < 0 || idx >= static_cast<int>(states.size())) {
            throw ConfigError(
                "FiniteStateSchedule: cycle_order index out of range");
          }
          cycle_order_.push_back(to_sorted[idx]);
        }
      }
    }
  }

  const std::vector<ValueDistribution>& states() const { return states_; }
  TransitionMode transition() const { return transition_; }
  double stay_min() const { return stay_min_; }
  double stay_max() const { return stay_max_; }
  const std::vector<int>& cycle_order() const { return cycle_order_; }

 private:
  std::vector<ValueDistribution> states_;
  TransitionMode transition_;
  double stay_min_;
  double stay_max_;
  std::vector<int> cycle_order_;
};

// Support endpoints relax toward (v_bar_m, v_bar_M) at unit rate while a
// single noise term, scaled by a_m on the lower and a_M on the upper
// endpoint, perturbs both.  The process starts at the targets.
struct LangevinSchedule {
  double v_bar_m;
  double v_bar_M;
  double a_m;
  double a_M;

  LangevinSchedule(double target_min, double target_max, double noise_min,
                   double noise_max)
      : v_bar_m(target_min),
        v_bar_M(target_max),
        a_m(noise_min),
        a_M(noise_max) {
    if (!std::isfinite(v_bar_m) || !std::isfinite(v_bar_M) ||
        !(v_bar_M > v_bar_m)) {
      throw ConfigError("LangevinSchedule: targets must satisfy v_bar_M > v_bar_m");
    }
    if (!std::isfinite(a_m) || !std::isfinite(a_M) || a_m < 0.0 || a_M < 0.0) {
      throw ConfigError("LangevinSchedule: noise intensities must be >= 0");
    }
  }
};

using ScheduleSpec =
    std::variant<std::monostate, FiniteStateSchedule, LangevinSchedule>;

// One realized environment path at step resolution h.  at_step(k) returns
// the distribution in force on [k h, (k+1) h) and must be called with
// nondecreasing k.
class SchedulePath {
 public:
  explicit SchedulePath(double h) : h_(h) {}
  virtual ~SchedulePath() = default;

  virtual ValueDistribution at_step(std::int64_t k) = 0;

  // Distribution in force at time t (nearest step boundary).
  ValueDistribution at_time(double t) {
    return at_step(static_cast<std::int64_t>(std::llround(t / h_)));
  }

  // Times the width floor clamped the state (mean-reverting paths only).
  virtual std::int64_t guard_triggers() const { return 0; }

  double step_size() const { return h_; }

 private:
  double h_;
};

class FiniteStatePath final : public SchedulePath {
 public:
  FiniteStatePath(FiniteStateSchedule schedule, double h, std::uint64_t seed)
      : SchedulePath(h), schedule_(std::move(schedule)), rng_(seed) {
    if (schedule_.states().size() > 1) {
      next_switch_step_ = draw_dwell_steps();
    }
  }

  ValueDistribution at_step(std::int64_t k) override {
    while (k >= next_switch_step_) {
      advance_state();
    }
    return current();
  }

 private:
  ValueDistribution current() const {
    const auto& st = schedule_.states();
    switch (schedule_.transition()) {
      case TransitionMode::kTwoStateRandom:
        return st[static_cast<std::size_t>(position_ % 2)];
      case TransitionMode::kCyclic: {
        const auto& ord = schedule_.cycle_order();
        return st[ord[static_cast<std::size_t>(position_ % ord.size())]];
      }
      case TransitionMode::kExplicitSequence: {
        const auto& ord = schedule_.cycle_order();
        const auto last = static_cast<std::int64_t>(ord.size()) - 1;
        return st[ord[static_cast<std::size_t>(std::min(position_, last))]];
      }
    }
    return st[0];
  }

  void advance_state() {
    ++position_;
    if (schedule_.transition() == TransitionMode::kExplicitSequence &&
        position_ >= static_cast<std::int64_t>(schedule_.cycle_order().size()) - 1) {
      // Sequence exhausted: hold the final state forever.
      position_ = static_cast<std::int64_t>(schedule_.cycle_order().size()) - 1;
      next_switch_step_ = std::numeric_limits<std::int64_t>::max();
      return;
    }
    next_switch_step_ += draw_dwell_steps();
  }

  std::int64_t draw_dwell_steps() {
    const double stay = rng_.uniform(schedule_.stay_min(), schedule_.stay_max());
    const auto steps = static_cast<std::int64_t>(std::ceil(stay / step_size()));
    return std::max<std::int64_t>(1, steps);
  }

  FiniteStateSchedule schedule_;
  Rng rng_;
  std::int64_t position_ = 0;
  std::int64_t next_switch_step_ = std::numeric_limits<std::int64_t>::max();
};

class LangevinPath final : public SchedulePath {
 public:
  LangevinPath(const LangevinSchedule& p, double h, std::uint64_t seed)
      : SchedulePath(h),
        params_(p),
        rng_(seed),
        sqrt_h_(std::sqrt(h)),
        width_bar_(p.v_bar_M - p.v_bar_m),
        width_floor_(1.0e-3 * (p.v_bar_M - p.v_bar_m)),
        v_m_(p.v_bar_m),
        width_(p.v_bar_M - p.v_bar_m) {}

  ValueDistribution at_step(std::int64_t k) override {
    for (; step_ < k; ++step_) advance();
    return ValueDistribution(v_m_, v_m_ + width_);
  }

  std::int64_t guard_triggers() const override { return guard_triggers_; }

 private:
  // Euler-Maruyama with one shared normal draw per step.  The state is
  // carried as (v_m, width) rather than (v_m, v_M): the width update
  //   width += h (width_bar - width) + (a_M - a_m) sqrt(h) z
  // is algebraically the v_M update minus the v_m update, and it keeps the
  // width bitwise constant when a_m == a_M and width starts at width_bar.
  void advance() {
    const double noise = sqrt_h_ * rng_.normal();
    v_m_ += step_size() * (params_.v_bar_m - v_m_) + params_.a_m * noise;
    width_ += step_size() * (width_bar_ - width_) +
              (params_.a_M - params_.a_m) * noise;
    if (width_ < width_floor_) {
      width_ = width_floor_;
      ++guard_triggers_;
    }
  }

  LangevinSchedule params_;
  Rng rng_;
  double sqrt_h_;
  double width_bar_;
  double width_floor_;
  double v_m_;
  double width_;
  std::int64_t step_ = 0;
  std::int64_t guard_triggers_ = 0;
};

inline std::unique_ptr<SchedulePath> make_schedule_path(
    const ScheduleSpec& spec, double h, std::uint64_t seed) {
  if (!std::isfinite(h) || !(h > 0.0)) {
    throw ConfigError("make_schedule_path: h must be finite and > 0");
  }
  if (const auto* fs = std::get_if<FiniteStateSchedule>(&spec)) {
    return std::make_unique<FiniteStatePath>(*fs, h, seed);
  }
  if (const auto* ls = std::get_if<LangevinSchedule>(&spec)) {
    return std::make_unique<LangevinPath>(*ls, h, seed);
  }
  throw ConfigError("make_schedule_path: no schedule configured");
}

}  // namespace tvauction

#endif  // TVAUCTION_ENVIRONMENTS_HPP_
