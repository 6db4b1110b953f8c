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
// Cross-validation battery: every closed form used by the simulation is
// checked against finite differences or the Monte-Carlo auction oracle.

#ifndef TVAUCTION_VALIDATION_HPP_
#define TVAUCTION_VALIDATION_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvauction/learning.hpp"
#include "tvauction/oracle.hpp"

namespace tvauction {

struct CheckResult {
  std::string name;
  double observed;   // worst statistic seen
  double tolerance;  // pass iff observed <= tolerance
  bool pass;
  std::string detail;
};

inline CheckResult make_check(std::string name, double observed,
                              double tolerance, std::string detail = {}) {
  return {std::move(name), observed, tolerance, observed <= tolerance,
          std::move(detail)};
}

// Shared evaluation grid: bidder counts, supports of different scale and
// sign, and intercepts placed below, inside, and above each support.
inline const std::vector<int>& grid_bidder_counts() {
  static const std::vector<int> counts = {2, 3, 10};
  return counts;
}

inline const std::vector<ValueDistribution>& grid_distributions() {
  static const std::vector<ValueDistribution> dists = {
      {0.0, 1.0}, {10.0, 20.0}, {20.0, 40.0}, {-5.0, 5.0}, {3.0, 3.5}};
  return dists;
}

inline std::vector<double> grid_intercepts(const ValueDistribution& d) {
  const double dv = d.width();
  return {d.v_m - 0.5 * dv, d.v_m + 0.2 * dv, d.v_m + 0.5 * dv,
          d.v_m + 0.9 * dv, d.v_M + 0.5 * dv};
}

// Central finite difference of the closed-form deviant payoff around the
// population intercept vs the analytic gradient, max relative error over
// the grid.
inline CheckResult check_gradient_central_fd() {
  double worst = 0.0;
  std::string at;
  for (int n : grid_bidder_counts()) {
    const AuctionConfig cfg(n);
    for (const ValueDistribution& d : grid_distributions()) {
      const double e = 1.0e-7 * d.width();
      for (double x : grid_intercepts(d)) {
        const double fd =
            (deviant_payoff(cfg, d, x + e, x) - deviant_payoff(cfg, d, x - e, x)) /
            (2.0 * e);
        const double g = payoff_gradient(cfg, d, x);
        const double rel = std::abs(fd - g) / std::max(std::abs(g), 1.0e-12);
        if (rel > worst) {
          worst = rel;
          std::ostringstream os;
          os << "worst at n=" << n << " d=[" << d.v_m << "," << d.v_M
             << "] x=" << x;
          at = os.str();
        }
      }
    }
  }
  return make_check("gradient-vs-central-fd", worst, 1.0e-6, at);
}

// Left and right one-sided difference quotients of the deviant payoff at
// the kink x' = x must agree (the derivative is continuous there).
inline CheckResult check_gradient_one_sided_agreement() {
  double worst = 0.0;
  for (int n : grid_bidder_counts()) {
    const AuctionConfig cfg(n);
    for (const ValueDistribution& d : grid_distributions()) {
      const double e = 1.0e-7 * d.width();
      for (double x : grid_intercepts(d)) {
        const double w0 = deviant_payoff(cfg, d, x, x);
        const double d_plus = (deviant_payoff(cfg, d, x + e, x) - w0) / e;
        const double d_minus = (w0 - deviant_payoff(cfg, d, x - e, x)) / e;
        const double g = payoff_gradient(cfg, d, x);
        const double rel =
            std::abs(d_plus - d_minus) / std::max(1.0, std::abs(g));
        worst = std::max(worst, rel);
      }
    }
  }
  return make_check("gradient-one-sided-agreement", worst, 1.0e-6);
}

namespace internal {

inline double z_score(double closed_form, const McEstimate& mc) {
  const double diff = std::abs(closed_form - mc.mean);
  if (mc.std_error == 0.0) return diff == 0.0 ? 0.0 : HUGE_VAL;
  return diff / mc.std_error;
}

}  // namespace internal

// Closed-form homogeneous payoff w+(x) vs the Monte-Carlo oracle.
inline CheckResult check_homogeneous_payoff_mc(std::int64_t samples,
                                               std::uint64_t seed) {
  struct Case {
    int n;
    ValueDistribution d;
    double x;
  };
  const std::vector<Case> cases = {{10, {10.0, 20.0}, 10.0},
                                   {10, {10.0, 20.0}, 15.0},
                                   {2, {0.0, 1.0}, 0.0},
                                   {3, {20.0, 40.0}, 26.0}};
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const AuctionConfig cfg(c.n);
    const McEstimate mc = estimate_homogeneous_payoff(
        cfg, c.d, c.x, samples, splitmix64(seed + 11 * (i + 1)));
    worst = std::max(worst,
                     internal::z_score(homogeneous_payoff(cfg, c.d, c.x), mc));
  }
  return make_check("homogeneous-payoff-vs-mc", worst, 3.0);
}

// Closed-form equilibrium payoff w* vs the oracle at x = v_m.
inline CheckResult check_equilibrium_payoff_mc(std::int64_t samples,
                                               std::uint64_t seed) {
  struct Case {
    int n;
    ValueDistribution d;
  };
  const std::vector<Case> cases = {
      {10, {10.0, 20.0}}, {10, {20.0, 40.0}}, {2, {0.0, 1.0}}};
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const AuctionConfig cfg(c.n);
    const McEstimate mc = estimate_homogeneous_payoff(
        cfg, c.d, c.d.v_m, samples, splitmix64(seed + 13 * (i + 1)));
    worst =
        std::max(worst, internal::z_score(equilibrium_payoff(cfg, c.d), mc));
  }
  return make_check("equilibrium-payoff-vs-mc", worst, 3.0);
}

// Closed-form deviant payoff w(x', x) vs the oracle on pairs straddling
// the kink from both sides.
inline CheckResult check_deviant_payoff_mc(std::int64_t samples,
                                           std::uint64_t seed) {
  struct Case {
    int n;
    ValueDistribution d;
    double x_dev;
    double x_pop;
  };
  const std::vector<Case> cases = {
      {10, {10.0, 20.0}, 16.0, 14.0}, {10, {10.0, 20.0}, 14.0, 16.0},
      {10, {10.0, 20.0}, 12.0, 18.0}, {10, {10.0, 20.0}, 18.0, 12.0},
      {10, {10.0, 20.0}, 15.0, 15.0}, {2, {0.0, 1.0}, 0.6, 0.4},
      {2, {0.0, 1.0}, 0.3, 0.7}};
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const AuctionConfig cfg(c.n);
    const McEstimate mc = estimate_deviant_payoff(
        cfg, c.d, c.x_dev, c.x_pop, samples, splitmix64(seed + 17 * (i + 1)));
    worst = std::max(
        worst,
        internal::z_score(deviant_payoff(cfg, c.d, c.x_dev, c.x_pop), mc));
  }
  return make_check("deviant-payoff-vs-mc", worst, 3.0);
}

// Static revenue equivalence: first-price (at the given slope) vs
// second-price revenue, and each vs the closed form.  The default slope
// alpha must pass; a deliberately wrong slope must fail.
inline CheckResult check_static_equivalence(
    std::int64_t samples, std::uint64_t seed,
    std::optional<double> slope_override = std::nullopt) {
  struct Case {
    int n;
    ValueDistribution d;
  };
  const std::vector<Case> cases = {
      {2, {0.0, 1.0}}, {3, {0.0, 1.0}}, {10, {10.0, 20.0}}};
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const AuctionConfig cfg(c.n);
    const double slope = slope_override.value_or(cfg.alpha);
    const McEstimate first = estimate_first_price_revenue(
        cfg, c.d, c.d.v_m, slope, samples, splitmix64(seed + 19 * (i + 1)));
    const McEstimate second = estimate_second_price_revenue(
        cfg, c.d, samples, splitmix64(seed + 23 * (i + 1)));
    const double closed = expected_revenue_closed_form(cfg, c.d);
    const double z_pair = std::abs(first.mean - second.mean) /
                          std::hypot(first.std_error, second.std_error);
    worst = std::max({worst, z_pair, internal::z_score(closed, first),
                      internal::z_score(closed, second)});
  }
  if (slope_override) {
    std::ostringstream os;
    os << "slope=" << *slope_override;
    detail = os.str();
  }
  return make_check("static-revenue-equivalence", worst, 3.0, detail);
}

// Conditional expected payment: bin means of the second-price payment
// given the winner's value vs f at the bin's mean winner value.  With
// ~100 simultaneous 3-sigma comparisons a small number of benign
// excursions is expected; a wrong f shifts essentially every bin, so the
// family rule is: at most 2% of populated bins beyond 3 SE and no bin
// beyond 6 SE.
inline CheckResult check_conditional_payment_bins(std::int64_t samples,
                                                  std::uint64_t seed) {
  const AuctionConfig cfg(2);
  const ValueDistribution d(0.0, 1.0);
  const auto bins =
      conditional_payment_bins(cfg, d, samples, splitmix64(seed + 29), 100);
  std::int64_t populated = 0;
  std::int64_t beyond3 = 0;
  double max_z = 0.0;
  for (const PaymentBin& b : bins) {
    if (b.count < 100) continue;  // too few draws to score
    ++populated;
    const double f = expected_payment(cfg, d, b.value_mean);
    const double z = std::abs(b.payment_mean - f) /
                     (b.payment_se > 0.0 ? b.payment_se : 1.0);
    max_z = std::max(max_z, z);
    if (z > 3.0) ++beyond3;
  }
  const double frac =
      populated > 0 ? static_cast<double>(beyond3) / populated : 1.0;
  std::ostringstream os;
  os << "bins=" << populated << " beyond3sigma=" << beyond3
     << " max_z=" << max_z;
  const double observed = max_z > 6.0 ? 1.0 : frac;
  return make_check("conditional-payment-bins", observed, 0.02, os.str());
}

// Full battery at the given sample budget.
inline std::vector<CheckResult> run_validation_battery(std::int64_t samples,
                                                       std::uint64_t seed) {
  return {check_gradient_central_fd(),
          check_gradient_one_sided_agreement(),
          check_homogeneous_payoff_mc(samples, seed),
          check_equilibrium_payoff_mc(samples, seed),
          check_deviant_payoff_mc(samples, seed),
          check_static_equivalence(samples, seed),
          check_conditional_payment_bins(samples, seed)};
}

}  // namespace tvauction

#endif  // TVAUCTION_VALIDATION_HPP_
