#pragma once

// Deterministic synthetic market data for backtest and CLI tests: a weekday
// index following a seeded AR(1) in log returns, and weekly option chains
// whose quotes are BSM values plus seeded noise.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "mamc/closed_form.hpp"
#include "mamc/market_data.hpp"
#include "mamc/returns_ar.hpp"
#include "mamc/rng.hpp"

namespace fixtures {

inline bool is_wednesday(mamc::Date d) {
    using namespace std::chrono;
    return weekday{sys_days{days{d.serial()}}} == Wednesday;
}

inline mamc::PriceSeries weekday_index(mamc::Date start, int num_days, std::uint64_t seed,
                                       double s0 = 8600.0, double alpha = 0.15,
                                       double sigma = 0.009) {
    mamc::PriceSeries series;
    series.label = "synthetic-index";
    mamc::rng::NormalStream noise(mamc::rng::mix(seed, std::uint64_t{0xD1CEu}));
    double close = s0;
    double y = 0.0;
    mamc::Date d = start;
    while (static_cast<int>(series.points.size()) < num_days) {
        if (d.is_weekday()) {
            series.points.push_back({d, std::round(close * 100.0) / 100.0});
            y = alpha * y + sigma * noise();
            close *= std::exp(y);
        }
        d = d.next_day();
    }
    return series;
}

// First `count` Wednesdays in the index calendar at or after `from`,
// restricted to positions with a full window of history and a trading week
// of future dates.
inline std::vector<mamc::Date> issue_wednesdays(const mamc::PriceSeries& index,
                                                mamc::Date from, int count,
                                                int window = 252) {
    std::vector<mamc::Date> out;
    for (std::size_t i = 0; i < index.points.size() && static_cast<int>(out.size()) < count;
         ++i) {
        const mamc::Date d = index.points[i].date;
        if (d < from || !is_wednesday(d)) continue;
        if (static_cast<int>(i) < window + 1) continue;
        if (i + 5 >= index.points.size()) break;
        out.push_back(d);
    }
    return out;
}

// One issue week per issue date: strikes on a 50-point grid around the prior
// close, calls and puts, quoted daily from issue to expiry (five trading
// days later). Quotes are BSM prices off the trailing window volatility,
// scaled and shifted by seeded noise, floored at zero, tick-rounded.
inline std::vector<mamc::OptionContract> bsm_noise_chain(const mamc::PriceSeries& index,
                                                         std::span<const mamc::Date> issues,
                                                         double rate, std::uint64_t seed,
                                                         int window = 252,
                                                         int strikes_per_kind = 10) {
    const mamc::ReturnSeries returns = mamc::log_returns(index);
    std::vector<mamc::OptionContract> chain;

    for (const mamc::Date issue : issues) {
        const int pos = index.position_of(issue);
        const double prior_close = index.points[static_cast<std::size_t>(pos) - 1].close;
        const double center = 50.0 * std::round(prior_close / 50.0);
        const mamc::Date expiry = index.points[static_cast<std::size_t>(pos) + 5].date;

        for (int k = 0; k < strikes_per_kind; ++k) {
            const double strike = center + 50.0 * (k - strikes_per_kind / 2);
            for (const mamc::OptionKind kind : {mamc::OptionKind::Call, mamc::OptionKind::Put}) {
                mamc::OptionContract contract;
                contract.kind = kind;
                contract.strike = strike;
                contract.issue_date = issue;
                contract.expiry_date = expiry;

                for (int q = 0; q <= 5; ++q) {
                    const std::size_t qpos = static_cast<std::size_t>(pos) + q;
                    const mamc::Date date = index.points[qpos].date;
                    const double spot = index.points[qpos].close;
                    const int horizon = 5 - q;
                    double quote;
                    if (horizon == 0) {
                        quote = kind == mamc::OptionKind::Call ? std::max(spot - strike, 0.0)
                                                               : std::max(strike - spot, 0.0);
                    } else {
                        const mamc::ReturnWindow win(
                            returns.points.data() + (qpos - 1 - static_cast<std::size_t>(window)),
                            static_cast<std::size_t>(window));
                        mamc::MarketSnapshot snap;
                        snap.spot = spot;
                        snap.strike = strike;
                        snap.rate_annual = rate;
                        snap.time_years = horizon / 252.0;
                        snap.vol_annual = mamc::annualized_volatility(win, 252);
                        const double fair = mamc::bsm_price(snap, kind);

                        std::uint64_t s = mamc::rng::mix(seed, static_cast<std::uint64_t>(kind));
                        s = mamc::rng::mix(s, strike);
                        s = mamc::rng::mix(s, issue);
                        s = mamc::rng::mix(s, date);
                        mamc::rng::NormalStream noise(s);
                        quote = std::max(fair * (1.0 + 0.04 * noise()) + 0.3 * noise(), 0.0);
                    }
                    contract.quotes[date] = std::round(quote * 100.0) / 100.0;
                }
                chain.push_back(contract);
            }
        }
    }
    return chain;
}

}  // namespace fixtures
