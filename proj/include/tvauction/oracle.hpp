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
// Monte-Carlo auction oracle: simulates literal sealed-bid rounds (draw
// values, form bids, pick the winner, settle the payment) so every closed
// form in the model can be cross-checked against brute force.

#ifndef TVAUCTION_ORACLE_HPP_
#define TVAUCTION_ORACLE_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "tvauction/core_model.hpp"
#include "tvauction/rng.hpp"

namespace tvauction {

enum class AuctionKind { kFirstPrice, kSecondPrice };

struct AuctionOutcome {
  int winner;
  double payment;
  double winner_payoff;
};

// Settles one sealed-bid round.  The highest bid wins, exact ties are
// broken uniformly at random (reservoir pass over the bid list), and the
// payment is the winning bid (first price) or the highest losing bid
// (second price).
inline AuctionOutcome clear_auction(AuctionKind kind,
                                    std::span<const double> bids,
                                    std::span<const double> values, Rng& rng) {
  if (bids.size() != values.size() || bids.size() < 2) {
    throw ConfigError(
        "clear_auction: bids and values must have equal length >= 2");
  }
  int winner = 0;
  int tie_count = 1;
  for (int i = 1; i < static_cast<int>(bids.size()); ++i) {
    if (bids[i] > bids[winner]) {
      winner = i;
      tie_count = 1;
    } else if (bids[i] == bids[winner]) {
      ++tie_count;
      if (rng.uniform01() * tie_count < 1.0) winner = i;
    }
  }
  double payment;
  if (kind == AuctionKind::kFirstPrice) {
    payment = bids[winner];
  } else {
    double best_other = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
      if (i != winner) best_other = std::max(best_other, bids[i]);
    }
    payment = best_other;
  }
  return {winner, payment, values[winner] - payment};
}

// Per-bidder bidding rule: the shared linear first-price strategy
// b(v) = alpha (v - x_i) + x_i, or truthful bidding b(v) = v.
struct StrategyProfile {
  enum class Kind { kLinearFirstPrice, kTruthful };

  Kind kind;
  std::vector<double> x_values;  // intercept per bidder (linear only)

  static StrategyProfile linear(std::vector<double> intercepts) {
    return {Kind::kLinearFirstPrice, std::move(intercepts)};
  }

  static StrategyProfile truthful() { return {Kind::kTruthful, {}}; }

  double bid(const AuctionConfig& cfg, int bidder, double value) const {
    if (kind == Kind::kTruthful) return value;
    const double x = x_values[static_cast<std::size_t>(bidder)];
    return cfg.alpha * (value - x) + x;
  }
};

struct McEstimate {
  double mean;
  double std_error;  // sample standard deviation / sqrt(n_samples)
  std::int64_t n_samples;
};

// Mean and standard error of `sample` over `samples` draws.  Work is cut
// into fixed blocks of 2^20 draws, each fed by its own substream of
// `seed`, and block sums are merged in index order, so the estimate is
// one exact value regardless of how many threads ran the blocks.
template <typename SampleFn>
McEstimate mc_estimate(std::int64_t samples, std::uint64_t seed,
                       SampleFn sample) {
  if (samples < 2) throw ConfigError("mc_estimate: samples must be >= 2");
  constexpr std::int64_t kBlock = std::int64_t{1} << 20;
  const std::int64_t n_blocks = (samples + kBlock - 1) / kBlock;

  struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));

  const auto run_block = [&](std::int64_t b) {
    auto fn = sample;  // private copy: any workspace stays thread-local
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(b));
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(samples, lo + kBlock);
    BlockSums acc;
    for (std::int64_t i = lo; i < hi; ++i) {
      const double v = fn(rng);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    blocks[static_cast<std::size_t>(b)] = acc;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (n_blocks == 1 || hw == 1) {
    for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::int64_t> next{0};
    const auto worker = [&] {
      for (std::int64_t b; (b = next.fetch_add(1)) < n_blocks;) run_block(b);
    };
    std::vector<std::thread> pool;
    const unsigned n_threads =
        std::min<unsigned>(hw, static_cast<unsigned>(n_blocks));
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const BlockSums& b : blocks) {
    sum += b.sum;
    sum_sq += b.sum_sq;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(samples - 1));
  return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

namespace internal {

inline void require_samples(std::int64_t samples, const char* op) {
  if (samples < 10'000) {
    throw ConfigError(std::string(op) + ": samples must be >= 10000");
  }
}

}  // namespace internal

// Per-bidder expected payoff when all n bidders play intercept x in a
// first-price auction: average winner payoff divided by n.
inline McEstimate estimate_homogeneous_payoff(const AuctionConfig& cfg,
                                              const ValueDistribution& d,
                                              double x, std::int64_t samples,
                                              std::uint64_t seed) {
  internal::require_samples(samples, "estimate_homogeneous_payoff");
  const int n = cfg.n;
  auto fn = [cfg, d, x, n, values = std::vector<double>(n),
             bids = std::vector<double>(n)](Rng& rng) mutable {
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = rng.uniform(d.v_m, d.v_M);
      bids[static_cast<std::size_t>(i)] =
          cfg.alpha * (values[static_cast<std::size_t>(i)] - x) + x;
    }
    const AuctionOutcome out =
        clear_auction(AuctionKind::kFirstPrice, bids, values, rng);
    return out.winner_payoff / n;
  };
  return mc_estimate(samples, seed, fn);
}

// Expected payoff of bidder 0 playing intercept x_dev against n-1 bidders
// playing x_pop (losing rounds contribute zero).
inline McEstimate estimate_deviant_payoff(const AuctionConfig& cfg,
                                          const ValueDistribution& d,
                                          double x_dev, double x_pop,
                                          std::int64_t samples,
                                          std::uint64_t seed) {
  internal::require_samples(samples, "estimate_deviant_payoff");
  const int n = cfg.n;
  auto fn = [cfg, d, x_dev, x_pop, n, values = std::vector<double>(n),
             bids = std::vector<double>(n)](Rng& rng) mutable {
    for (int i = 0; i < n; ++i) {
      const double x = (i == 0) ? x_dev : x_pop;
      values[static_cast<std::size_t>(i)] = rng.uniform(d.v_m, d.v_M);
      bids[static_cast<std::size_t>(i)] =
          cfg.alpha * (values[static_cast<std::size_t>(i)] - x) + x;
    }
    const AuctionOutcome out =
        clear_auction(AuctionKind::kFirstPrice, bids, values, rng);
    return out.winner == 0 ? out.winner_payoff : 0.0;
  };
  return mc_estimate(samples, seed, fn);
}

// Seller revenue per round under linear first-price bidding with a given
// intercept and slope.  The slope parameter exists so validation can
// inject a wrong slope and watch the equivalence check fail.
inline McEstimate estimate_first_price_revenue(const AuctionConfig& cfg,
                                               const ValueDistribution& d,
                                               double x, double slope,
                                               std::int64_t samples,
                                               std::uint64_t seed) {
  internal::require_samples(samples, "estimate_first_price_revenue");
  const int n = cfg.n;
  auto fn = [d, x, slope, n, values = std::vector<double>(n),
             bids = std::vector<double>(n)](Rng& rng) mutable {
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = rng.uniform(d.v_m, d.v_M);
      bids[static_cast<std::size_t>(i)] =
          slope * (values[static_cast<std::size_t>(i)] - x) + x;
    }
    return clear_auction(AuctionKind::kFirstPrice, bids, values, rng).payment;
  };
  return mc_estimate(samples, seed, fn);
}

// Seller revenue per round under truthful second-price bidding.
inline McEstimate estimate_second_price_revenue(const AuctionConfig& cfg,
                                                const ValueDistribution& d,
                                                std::int64_t samples,
                                                std::uint64_t seed) {
  internal::require_samples(samples, "estimate_second_price_revenue");
  const int n = cfg.n;
  auto fn = [d, n, values = std::vector<double>(n)](Rng& rng) mutable {
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = rng.uniform(d.v_m, d.v_M);
    }
    return clear_auction(AuctionKind::kSecondPrice, values, values, rng)
        .payment;
  };
  return mc_estimate(samples, seed, fn);
}

struct RevenueComparison {
  McEstimate first_price;
  McEstimate second_price;
};

// Static-environment revenue equivalence: equilibrium first-price revenue
// vs truthful second-price revenue, estimated on independent streams.
inline RevenueComparison check_static_revenue_equivalence(
    const AuctionConfig& cfg, const ValueDistribution& d,
    std::int64_t samples, std::uint64_t seed) {
  return {estimate_first_price_revenue(cfg, d, d.v_m, cfg.alpha, samples,
                                       splitmix64(seed + 1)),
          estimate_second_price_revenue(cfg, d, samples, splitmix64(seed + 2))};
}

struct PaymentBin {
  std::int64_t count = 0;
  double value_mean = 0.0;    // mean winner value inside the bin
  double payment_mean = 0.0;  // mean payment inside the bin
  double payment_se = 0.0;    // standard error of payment_mean
};

// Mean payment conditional on the winner's value, binned over equal-width
// value bins, under truthful second-price bidding.  Bin means estimate
// f(v); since f is linear, the reference point inside each bin is the
// empirical mean winner value, which removes binning bias.
inline std::vector<PaymentBin> conditional_payment_bins(
    const AuctionConfig& cfg, const ValueDistribution& d,
    std::int64_t samples, std::uint64_t seed, int n_bins = 100) {
  internal::require_samples(samples, "conditional_payment_bins");
  if (n_bins < 1) throw ConfigError("conditional_payment_bins: n_bins >= 1");
  const int n = cfg.n;
  struct Acc {
    std::int64_t count = 0;
    double sum_v = 0.0;
    double sum_p = 0.0;
    double sum_p_sq = 0.0;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(n_bins));
  Rng rng = Rng::substream(seed, 0);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j) {
      values[static_cast<std::size_t>(j)] = rng.uniform(d.v_m, d.v_M);
    }
    const AuctionOutcome out =
        clear_auction(AuctionKind::kSecondPrice, values, values, rng);
    const double v = values[static_cast<std::size_t>(out.winner)];
    int bin = static_cast<int>(cdf(d, v) * n_bins);
    bin = std::clamp(bin, 0, n_bins - 1);
    Acc& a = acc[static_cast<std::size_t>(bin)];
    ++a.count;
    a.sum_v += v;
    a.sum_p += out.payment;
    a.sum_p_sq += out.payment * out.payment;
  }
  std::vector<PaymentBin> bins(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    const Acc& a = acc[static_cast<std::size_t>(b)];
    PaymentBin& out = bins[static_cast<std::size_t>(b)];
    out.count = a.count;
    if (a.count > 0) {
      out.value_mean = a.sum_v / static_cast<double>(a.count);
      out.payment_mean = a.sum_p / static_cast<double>(a.count);
    }
    if (a.count > 1) {
      const double var = std::max(
          0.0, (a.sum_p_sq - a.sum_p * out.payment_mean) /
                   static_cast<double>(a.count - 1));
      out.payment_se = std::sqrt(var / static_cast<double>(a.count));
    }
  }
  return bins;
}

}  // namespace tvauction

#endif  // TVAUCTION_ORACLE_HPP_
