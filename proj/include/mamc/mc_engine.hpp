#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mamc/returns_ar.hpp"
#include "mamc/rng.hpp"
#include "mamc/types.hpp"

namespace mamc {

struct McConfig {
    long num_paths = 50000;       // U
    std::uint64_t master_seed = 0;
    int horizon_days = 1;         // T, trading days to expiry
    double rate_annual = 0.0;     // r
    int day_count = 252;          // trading days per year; T_years = T / day_count
    int num_workers = 1;          // result is identical for any value
};

struct McPrice {
    double premium = 0.0;
    double std_error = 0.0;  // sample stdev of discounted payoffs / sqrt(U)
    long num_paths = 0;
};

// Call and put priced from the identical terminal-price sample (common
// random numbers), so the discrete parity identity
//   call - put = disc * (mean_terminal - strike)
// holds up to floating-point summation.
struct McPricePair {
    McPrice call;
    McPrice put;
    double mean_terminal = 0.0;
    double discount = 1.0;
};

// One simulated path: iterate y_k = alpha * y_{k-1} + sigma_theta * z_k for
// k = 1..T starting from the realized y_start, feeding each simulated return
// back into the next step, and compound onto s_start in log space.
template <class NoiseFn>
double simulate_terminal_price(const ArModel& model, double y_start, double s_start,
                               int horizon_days, NoiseFn&& noise) {
    double y = y_start;
    double log_growth = 0.0;
    for (int k = 0; k < horizon_days; ++k) {
        y = expected_return(model, y) + model.sigma_theta * noise();
        log_growth += y;
    }
    return s_start * std::exp(log_growth);
}

namespace detail {

// Per-block accumulator. Blocks have a fixed size, are filled in path order,
// and are folded in block order, so the reduction is independent of how
// blocks are distributed over workers. Premiums use plain ordered sums
// (monotone under rounding); the variance uses Welford/Chan terms.
struct McBlockStats {
    long n = 0;
    double sum_call = 0.0, sum_put = 0.0, sum_terminal = 0.0;
    double mean_call = 0.0, m2_call = 0.0;
    double mean_put = 0.0, m2_put = 0.0;

    void add(double call_payoff, double put_payoff, double terminal) {
        ++n;
        sum_call += call_payoff;
        sum_put += put_payoff;
        sum_terminal += terminal;
        const double inv = 1.0 / static_cast<double>(n);
        const double dc = call_payoff - mean_call;
        mean_call += dc * inv;
        m2_call += dc * (call_payoff - mean_call);
        const double dp = put_payoff - mean_put;
        mean_put += dp * inv;
        m2_put += dp * (put_payoff - mean_put);
    }

    void merge(const McBlockStats& o) {
        if (o.n == 0) return;
        sum_call += o.sum_call;
        sum_put += o.sum_put;
        sum_terminal += o.sum_terminal;
        const long total = n + o.n;
        const double w = static_cast<double>(o.n) / static_cast<double>(total);
        const double dc = o.mean_call - mean_call;
        m2_call += o.m2_call + dc * dc * w * static_cast<double>(n);
        mean_call += dc * w;
        const double dp = o.mean_put - mean_put;
        m2_put += o.m2_put + dp * dp * w * static_cast<double>(n);
        mean_put += dp * w;
        n = total;
    }
};

inline constexpr long kMcBlockSize = 8192;

}  // namespace detail

// Monte Carlo premiums per the discounted-payoff averages
//   C = disc * mean(max(S_T - K, 0)),  P = disc * mean(max(K - S_T, 0)),
// disc = e^{-r * T / day_count}. Path i draws from a substream seeded by
// mix(master_seed, i); results are bit-identical for any worker count.
inline McPricePair price_pair_mc(const ArModel& model, double strike, double s_start,
                                 double y_start, const McConfig& cfg) {
    if (cfg.num_paths < 1) {
        throw std::invalid_argument("price_pair_mc: num_paths must be >= 1");
    }
    if (cfg.horizon_days < 1) {
        throw std::invalid_argument("price_pair_mc: horizon_days must be >= 1");
    }
    if (cfg.day_count <= 0) {
        throw std::invalid_argument("price_pair_mc: day_count must be positive");
    }
    if (!(strike > 0.0) || !(s_start > 0.0)) {
        throw std::invalid_argument("price_pair_mc: strike and spot must be positive");
    }

    const double t_years = static_cast<double>(cfg.horizon_days) / cfg.day_count;
    const double disc = std::exp(-cfg.rate_annual * t_years);

    const long num_blocks =
        (cfg.num_paths + detail::kMcBlockSize - 1) / detail::kMcBlockSize;
    std::vector<detail::McBlockStats> blocks(static_cast<std::size_t>(num_blocks));

    const auto run_block = [&](long b) {
        const long begin = b * detail::kMcBlockSize;
        const long end = std::min(begin + detail::kMcBlockSize, cfg.num_paths);
        detail::McBlockStats stats;
        for (long i = begin; i < end; ++i) {
            rng::NormalStream noise(rng::mix(cfg.master_seed, static_cast<std::uint64_t>(i)));
            const double terminal =
                simulate_terminal_price(model, y_start, s_start, cfg.horizon_days, noise);
            const double call_payoff = disc * std::max(terminal - strike, 0.0);
            const double put_payoff = disc * std::max(strike - terminal, 0.0);
            stats.add(call_payoff, put_payoff, terminal);
        }
        blocks[static_cast<std::size_t>(b)] = stats;
    };

    if (cfg.num_workers <= 1 || num_blocks == 1) {
        for (long b = 0; b < num_blocks; ++b) run_block(b);
    } else {
        std::atomic<long> next{0};
        const int workers =
            static_cast<int>(std::min<long>(cfg.num_workers, num_blocks));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < num_blocks; b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    detail::McBlockStats total;
    for (const auto& block : blocks) total.merge(block);

    const double inv_u = 1.0 / static_cast<double>(cfg.num_paths);
    const auto finish = [&](double sum, double m2) {
        McPrice price;
        price.premium = sum * inv_u;
        price.num_paths = cfg.num_paths;
        if (cfg.num_paths > 1) {
            const double var = m2 / static_cast<double>(cfg.num_paths - 1);
            price.std_error = std::sqrt(std::max(var, 0.0) * inv_u);
        }
        return price;
    };

    McPricePair pair;
    pair.call = finish(total.sum_call, total.m2_call);
    pair.put = finish(total.sum_put, total.m2_put);
    pair.mean_terminal = total.sum_terminal * inv_u;
    pair.discount = disc;
    return pair;
}

inline McPrice price_option_mc(const ArModel& model, OptionKind kind, double strike,
                               double s_start, double y_start, const McConfig& cfg) {
    const McPricePair pair = price_pair_mc(model, strike, s_start, y_start, cfg);
    return kind == OptionKind::Call ? pair.call : pair.put;
}

}  // namespace mamc
