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
// Static auction model: n symmetric bidders with private values drawn
// uniformly from [v_m, v_M].  Closed forms for the equilibrium bid /
// expected payment f(v) = alpha (v - v_m) + v_m with alpha = (n-1)/n,
// the winner payoff u(v) = v - f(v), and the unconditional expected
// payment G(v) = P(v)^{n-1} f(v).

#ifndef TVAUCTION_CORE_MODEL_HPP_
#define TVAUCTION_CORE_MODEL_HPP_

#include <cmath>
#include <string>

#include "tvauction/errors.hpp"

namespace tvauction {

// base^e for integer e >= 0 by squaring.  Used instead of std::pow so the
// closed forms stay within a couple of ulps of the exact polynomial.
inline double pow_int(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Uniform value distribution on [v_m, v_M], v_m < v_M.
struct ValueDistribution {
  double v_m;
  double v_M;

  ValueDistribution(double minimum, double maximum)
      : v_m(minimum), v_M(maximum) {
    if (!std::isfinite(v_m) || !std::isfinite(v_M) || !(v_M > v_m)) {
      throw ConfigError(
          "ValueDistribution: bounds must be finite with v_M > v_m (got [" +
          std::to_string(minimum) + ", " + std::to_string(maximum) + "])");
    }
  }

  double width() const { return v_M - v_m; }

  friend bool operator==(const ValueDistribution&,
                         const ValueDistribution&) = default;
};

// Bidder count n >= 2 and the derived bid slope alpha = (n-1)/n.
struct AuctionConfig {
  int n;
  double alpha;

  explicit AuctionConfig(int bidders) : n(bidders), alpha(0.0) {
    if (bidders < 2) {
      throw ConfigError("AuctionConfig: n must be >= 2 (got " +
                        std::to_string(bidders) + ")");
    }
    alpha = (bidders - 1.0) / bidders;
  }
};

inline double pdf(const ValueDistribution& d, double v) {
  return (v >= d.v_m && v <= d.v_M) ? 1.0 / d.width() : 0.0;
}

// Cumulative distribution, clamped to [0, 1] outside the support.
inline double cdf(const ValueDistribution& d, double v) {
  if (v <= d.v_m) return 0.0;
  if (v >= d.v_M) return 1.0;
  return (v - d.v_m) / d.width();
}

namespace internal {

inline void require_in_support(const ValueDistribution& d, double v,
                               const char* op) {
  if (!(v >= d.v_m && v <= d.v_M)) {
    throw OutOfSupportError(std::string(op) + ": value " + std::to_string(v) +
                            " outside support [" + std::to_string(d.v_m) +
                            ", " + std::to_string(d.v_M) + "]");
  }
}

}  // namespace internal

// Expected payment f(v) of a winner with value v.  Also the symmetric
// equilibrium first-price bid at v.
inline double expected_payment(const AuctionConfig& cfg,
                               const ValueDistribution& d, double v) {
  internal::require_in_support(d, v, "expected_payment");
  return cfg.alpha * (v - d.v_m) + d.v_m;
}

// Winner payoff u(v) = v - f(v) (= (v - v_m)/n).  Computed as the literal
// difference so that u(v) + f(v) == v holds bitwise.
inline double expected_winner_payoff(const AuctionConfig& cfg,
                                     const ValueDistribution& d, double v) {
  internal::require_in_support(d, v, "expected_winner_payoff");
  return v - expected_payment(cfg, d, v);
}

// Unconditional expected payment G(v) = P(v)^{n-1} f(v): the win
// probability against n-1 independent rivals times the payment when
// winning.  G(v_m) = 0 since P(v_m) = 0.
inline double expected_total_payment(const AuctionConfig& cfg,
                                     const ValueDistribution& d, double v) {
  internal::require_in_support(d, v, "expected_total_payment");
  return pow_int(cdf(d, v), cfg.n - 1) * expected_payment(cfg, d, v);
}

// Expected seller revenue E[f(V_max)] = v_m + (v_M - v_m)(n-1)/(n+1).
// Equals the second-price expected revenue (mean second-highest value).
inline double expected_revenue_closed_form(const AuctionConfig& cfg,
                                           const ValueDistribution& d) {
  return d.v_m + d.width() * (cfg.n - 1.0) / (cfg.n + 1.0);
}

}  // namespace tvauction

#endif  // TVAUCTION_CORE_MODEL_HPP_
