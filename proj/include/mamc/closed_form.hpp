#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mamc/returns_ar.hpp"
#include "mamc/types.hpp"

namespace mamc {

// Inputs shared by the closed-form pricers. time_years is the annualized
// time to expiry, vol_annual the annualized volatility.
struct MarketSnapshot {
    double spot = 0.0;
    double strike = 0.0;
    double rate_annual = 0.0;
    double time_years = 0.0;
    double vol_annual = 0.0;
};

inline void validate_snapshot(const MarketSnapshot& s) {
    if (!(s.spot > 0.0) || !(s.strike > 0.0)) {
        throw std::invalid_argument("snapshot: spot and strike must be positive");
    }
    if (s.time_years < 0.0 || s.vol_annual < 0.0) {
        throw std::invalid_argument("snapshot: negative time or volatility");
    }
}

// Standard normal CDF via erfc; absolute error well below 1e-12.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Black-Scholes-Merton price for a European option on a non-dividend asset.
// The sigma*sqrt(T) -> 0 limit is the discounted intrinsic on the forward.
inline double bsm_price(const MarketSnapshot& s, OptionKind kind) {
    validate_snapshot(s);
    const double disc = std::exp(-s.rate_annual * s.time_years);
    const double vol_sqrt_t = s.vol_annual * std::sqrt(s.time_years);
    if (vol_sqrt_t == 0.0) {
        const double call = std::max(s.spot - s.strike * disc, 0.0);
        return kind == OptionKind::Call ? call : std::max(s.strike * disc - s.spot, 0.0);
    }
    const double d1 = (std::log(s.spot / s.strike) +
                       (s.rate_annual + 0.5 * s.vol_annual * s.vol_annual) * s.time_years) /
                      vol_sqrt_t;
    const double d2 = d1 - vol_sqrt_t;
    double price;
    if (kind == OptionKind::Call) {
        price = s.spot * norm_cdf(d1) - s.strike * disc * norm_cdf(d2);
    } else {
        price = s.strike * disc * norm_cdf(-d2) - s.spot * norm_cdf(-d1);
    }
    return std::max(price, 0.0);
}

// Cox-Ross-Rubinstein lattice: per-step u = e^{sigma sqrt(dt)}, d = 1/u,
// p = (e^{r dt} - d)/(u - d). The call is the discounted risk-neutral
// expectation of the terminal payoff by backward induction; the put comes
// from put-call parity. sigma = 0 degenerates to the deterministic forward.
inline double crr_price(const MarketSnapshot& s, OptionKind kind, int steps) {
    validate_snapshot(s);
    if (steps < 1) {
        throw std::invalid_argument("crr_price: steps must be >= 1");
    }
    const double disc = std::exp(-s.rate_annual * s.time_years);

    double call;
    if (s.vol_annual * std::sqrt(s.time_years) == 0.0) {
        call = std::max(s.spot - s.strike * disc, 0.0);
    } else {
        const double dt = s.time_years / steps;
        const double u = std::exp(s.vol_annual * std::sqrt(dt));
        const double d = 1.0 / u;
        const double growth = std::exp(s.rate_annual * dt);
        const double p = (growth - d) / (u - d);
        if (p < 0.0 || p > 1.0) {
            std::ostringstream msg;
            msg << "crr_price: risk-neutral probability " << p << " outside [0,1]"
                << " (r=" << s.rate_annual << ", sigma=" << s.vol_annual
                << ", T=" << s.time_years << ", steps=" << steps << ")";
            throw std::domain_error(msg.str());
        }

        std::vector<double> values(static_cast<std::size_t>(steps) + 1);
        // terminal node i has price spot * u^i * d^(steps - i) = spot * u^(2i - steps)
        const double log_u = s.vol_annual * std::sqrt(dt);
        for (int i = 0; i <= steps; ++i) {
            const double terminal = s.spot * std::exp(log_u * (2 * i - steps));
            values[static_cast<std::size_t>(i)] = std::max(terminal - s.strike, 0.0);
        }
        const double step_disc = std::exp(-s.rate_annual * dt);
        for (int level = steps; level > 0; --level) {
            for (int i = 0; i < level; ++i) {
                values[static_cast<std::size_t>(i)] =
                    step_disc * (p * values[static_cast<std::size_t>(i) + 1] +
                                 (1.0 - p) * values[static_cast<std::size_t>(i)]);
            }
        }
        call = values[0];
    }

    if (kind == OptionKind::Call) return call;
    return std::max(call - s.spot + s.strike * disc, 0.0);
}

// Steps used when no explicit lattice size is configured.
inline int default_crr_steps(double time_years, int day_count = 252) {
    const int from_horizon = static_cast<int>(std::ceil(time_years * day_count));
    return std::max(50, from_horizon);
}

// Single-period binomial variant: the whole life is one step and the
// discounted expectation is taken over the stock price itself, with no
// payoff applied. Kept for auditability next to the full lattice; not used
// by the backtest.
inline double bt_price_one_step(const MarketSnapshot& s, OptionKind kind) {
    validate_snapshot(s);
    const double disc = std::exp(-s.rate_annual * s.time_years);
    const double u = std::exp(s.vol_annual * std::sqrt(s.time_years));
    const double d = 1.0 / u;
    double call;
    if (u == d) {
        call = s.spot;
    } else {
        const double p = (std::exp(s.rate_annual * s.time_years) - d) / (u - d);
        call = disc * (p * s.spot * u + (1.0 - p) * s.spot * d);
    }
    if (kind == OptionKind::Call) return call;
    return call - s.spot + s.strike * disc;
}

// Annualized volatility of a return window: sample stdev (divide by N-1)
// scaled by sqrt(day_count). With the default 252-day window this equals the
// literal sqrt(N) annualization; for other window lengths sqrt(day_count)
// keeps the figure a per-year quantity.
inline double annualized_volatility(ReturnWindow window, int day_count = 252) {
    const std::size_t n = window.size();
    if (n < 2) {
        throw std::invalid_argument("annualized_volatility: window shorter than 2");
    }
    if (day_count <= 0) {
        throw std::invalid_argument("annualized_volatility: day_count must be positive");
    }
    double mean = 0.0;
    for (const auto& p : window) mean += p.y;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& p : window) ss += (p.y - mean) * (p.y - mean);
    const double sample_stdev = std::sqrt(ss / static_cast<double>(n - 1));
    return sample_stdev * std::sqrt(static_cast<double>(day_count));
}

}  // namespace mamc
