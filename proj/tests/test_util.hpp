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
// Shared test oracles.  These recompute model quantities from their
// integral definitions (composite Simpson quadrature) instead of the
// closed forms under test.

#ifndef TVAUCTION_TESTS_TEST_UTIL_HPP_
#define TVAUCTION_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tvauction/core_model.hpp"
#include "tvauction/learning.hpp"

namespace tvauction::testing {

// Supports of different scale, offset, and sign for property tests.
inline const std::vector<ValueDistribution>& grid() {
  static const std::vector<ValueDistribution> dists = {
      {0.0, 1.0}, {10.0, 20.0}, {20.0, 40.0}, {-5.0, 5.0}, {3.0, 3.5}};
  return dists;
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / (2 * panels);
  double sum = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) {
    sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Deviant payoff from its defining integral: value v' wins against each
// rival iff the rival's value falls below vt(v') = v' + (x_dev-x_pop)/(n-1)
// (cdf clamps to the support), and the deviant then pays its own bid.
// The integrand has a kink where vt crosses the support edge, so the
// integral is split there.
inline double deviant_payoff_quadrature(const AuctionConfig& cfg,
                                        const ValueDistribution& d,
                                        double x_dev, double x_pop) {
  const auto integrand = [&](double v) {
    const double bid = cfg.alpha * (v - x_dev) + x_dev;
    const double v_tilde = v + (x_dev - x_pop) / (cfg.n - 1);
    return (v - bid) * pdf(d, v) * pow_int(cdf(d, v_tilde), cfg.n - 1);
  };
  double kink = x_dev >= x_pop ? d.v_M - (x_dev - x_pop) / (cfg.n - 1)
                               : d.v_m + (x_pop - x_dev) / (cfg.n - 1);
  kink = std::clamp(kink, d.v_m, d.v_M);
  return simpson(integrand, d.v_m, kink, 4000) +
         simpson(integrand, kink, d.v_M, 4000);
}

// Per-bidder equilibrium payoff from its integral definition:
// E[u(v) P(v)^{n-1}] over v ~ p.
inline double equilibrium_payoff_quadrature(const AuctionConfig& cfg,
                                            const ValueDistribution& d) {
  const auto integrand = [&](double v) {
    return expected_winner_payoff(cfg, d, v) * pow_int(cdf(d, v), cfg.n - 1) *
           pdf(d, v);
  };
  return simpson(integrand, d.v_m, d.v_M, 4000);
}

// Expected seller revenue from its integral definition: E[f(V_max)] with
// V_max density n P(v)^{n-1} p(v).
inline double expected_revenue_quadrature(const AuctionConfig& cfg,
                                          const ValueDistribution& d) {
  const auto integrand = [&](double v) {
    return expected_payment(cfg, d, v) * cfg.n *
           pow_int(cdf(d, v), cfg.n - 1) * pdf(d, v);
  };
  return simpson(integrand, d.v_m, d.v_M, 4000);
}

}  // namespace tvauction::testing

#endif  // TVAUCTION_TESTS_TEST_UTIL_HPP_
