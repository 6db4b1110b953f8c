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
// Gradient-based adaptation of the shared linear bidding strategy
// b(v) = alpha (v - x) + x.  All n bidders carry one intercept x; the
// payoff gradient is taken with respect to a single bidder's deviation
// x' and evaluated back at x' = x, giving the autonomous dynamics
// dx/dt = eta * g(x) with g(x) = -(x - v_m) / (n (n-1) (v_M - v_m)).

#ifndef TVAUCTION_LEARNING_HPP_
#define TVAUCTION_LEARNING_HPP_

#include <cmath>

#include "tvauction/core_model.hpp"

namespace tvauction {

// Shared strategy intercept and simulation clock.
struct LearnerState {
  double x;
  double t;
};

// Learning-rate acceleration eta and integration step h, both > 0.
struct DynamicsConfig {
  double eta;
  double h;

  explicit DynamicsConfig(double rate = 2.0e3, double step = 1.0e-3)
      : eta(rate), h(step) {
    if (!std::isfinite(eta) || !(eta > 0.0)) {
      throw ConfigError("DynamicsConfig: eta must be finite and > 0");
    }
    if (!std::isfinite(h) || !(h > 0.0)) {
      throw ConfigError("DynamicsConfig: h must be finite and > 0");
    }
  }
};

// Expected payoff w(x', x) of one bidder playing intercept x_dev against
// n-1 bidders playing x_pop, in closed form.
//
// With shared slope alpha the deviant beats a rival of value u iff the
// rival's value stays below vt(v') = v' + (x_dev - x_pop)/(n-1); the win
// probability is P(vt)^{n-1} with P clamped to the support.  The clamp
// splits the value integral at v_M - delta (for x_dev >= x_pop) or at
// v_m + delta (for x_dev < x_pop), delta = |x_dev - x_pop|/(n-1), and
// each piece has a polynomial antiderivative.
inline double deviant_payoff(const AuctionConfig& cfg,
                             const ValueDistribution& d, double x_dev,
                             double x_pop) {
  const int n = cfg.n;
  const double dv = d.width();
  const double norm = n * pow_int(dv, n);
  if (x_dev >= x_pop) {
    const double delta = (x_dev - x_pop) / (n - 1);
    if (delta >= dv) {
      // The deviant outbids every rival at every value.
      return (0.5 * (d.v_m + d.v_M) - x_dev) / n;
    }
    // Values in [v_m, v_M - delta]: win probability ((v - v_m + delta)/dv)^{n-1}.
    // Substituting s = v - v_m + delta gives the antiderivative below.
    const double q = d.v_m - delta - x_dev;
    const auto anti = [&](double s) {
      return pow_int(s, n) * (s / (n + 1) + q / n);
    };
    const double head = (anti(dv) - anti(delta)) / norm;
    // Values above v_M - delta win outright.
    const double b_hi = d.v_M - x_dev;
    const double b_lo = d.v_M - delta - x_dev;
    const double tail = 0.5 * (b_hi * b_hi - b_lo * b_lo) / (n * dv);
    return head + tail;
  }
  const double delta = (x_pop - x_dev) / (n - 1);
  if (delta >= dv) return 0.0;  // the deviant never wins
  // Values in [v_m + delta, v_M] win with probability ((v - v_m - delta)/dv)^{n-1}.
  const double s_top = dv - delta;
  const double q = d.v_m + delta - x_dev;
  return pow_int(s_top, n) * (s_top / (n + 1) + q / n) / norm;
}

// Raw payoff gradient g(x) = dw(x', x)/dx' at x' = x.  Linear in x and
// not clamped to the current support; the learning rate is applied by the
// caller.
inline double payoff_gradient(const AuctionConfig& cfg,
                              const ValueDistribution& d, double x) {
  return -(x - d.v_m) / (cfg.n * (cfg.n - 1.0) * d.width());
}

// Per-bidder payoff w+(x) when all n bidders play intercept x:
//   w+(x) = dv/(n(n+1)) - (x - v_m)/n^2.
inline double homogeneous_payoff(const AuctionConfig& cfg,
                                 const ValueDistribution& d, double x) {
  return d.width() / (cfg.n * (cfg.n + 1.0)) -
         (x - d.v_m) / (static_cast<double>(cfg.n) * cfg.n);
}

// Equilibrium per-bidder payoff w* = w+(v_m) = dv/(n(n+1)).  By revenue
// equivalence this is also the per-round second-price payoff.
inline double equilibrium_payoff(const AuctionConfig& cfg,
                                 const ValueDistribution& d) {
  return d.width() / (cfg.n * (cfg.n + 1.0));
}

// One classical RK4 step of dx/dt = eta * g(x), with the distribution held
// fixed across the step.  x = v_m is preserved exactly (all stage slopes
// vanish there).
inline LearnerState rk4_step(const AuctionConfig& cfg,
                             const DynamicsConfig& dyn, const LearnerState& s,
                             const ValueDistribution& d) {
  const auto f = [&](double x) { return dyn.eta * payoff_gradient(cfg, d, x); };
  const double h = dyn.h;
  const double k1 = f(s.x);
  const double k2 = f(s.x + 0.5 * h * k1);
  const double k3 = f(s.x + 0.5 * h * k2);
  const double k4 = f(s.x + h * k3);
  return {s.x + h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4), s.t + h};
}

}  // namespace tvauction

#endif  // TVAUCTION_LEARNING_HPP_
