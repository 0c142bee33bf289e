#pragma once

#include <cassert>
#include <cmath>
#include <span>
#include <stdexcept>

namespace mamc {

struct PricePair {
    double market = 0.0;  // quoted premium
    double model = 0.0;   // model premium
};

// The five performance indicators for one (model, option-group) cell.
// mean_error uses the model - market convention: negative means the model
// underprices. std is the sample (Q-1) stdev of the same differences, so
//   rmse^2 = std^2 * (Q-1)/Q + mean_error^2
// holds exactly. smape keeps the literal 2/Q form (each term is bounded by
// 1, so smape <= 200%); pairs with market + model = 0 are excluded from
// smape only and counted in smape_excluded.
struct IndicatorSet {
    double mean_error = 0.0;
    double std = 0.0;
    double rmse = 0.0;
    double smape_pct = 0.0;
    double ape_pct = 0.0;
    long count = 0;           // Q
    long smape_excluded = 0;
};

inline IndicatorSet compute_indicators(std::span<const PricePair> pairs) {
    if (pairs.empty()) {
        throw std::invalid_argument("compute_indicators: empty pair list");
    }
    for (const auto& p : pairs) {
        if (!std::isfinite(p.market) || !std::isfinite(p.model) || p.market < 0.0 ||
            p.model < 0.0) {
            throw std::invalid_argument("compute_indicators: prices must be finite and >= 0");
        }
    }

    const long q = static_cast<long>(pairs.size());
    IndicatorSet out;
    out.count = q;

    double sum_diff = 0.0;
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    double sum_market = 0.0;
    double smape_terms = 0.0;
    long smape_count = 0;
    for (const auto& p : pairs) {
        const double d = p.model - p.market;
        sum_diff += d;
        sum_sq += d * d;
        sum_abs += std::abs(d);
        sum_market += p.market;
        const double denom = p.market + p.model;
        if (denom > 0.0) {
            smape_terms += std::abs(d) / denom;
            ++smape_count;
        }
    }

    out.mean_error = sum_diff / static_cast<double>(q);
    out.rmse = std::sqrt(sum_sq / static_cast<double>(q));

    if (q > 1) {
        double ss = 0.0;
        for (const auto& p : pairs) {
            const double centered = (p.model - p.market) - out.mean_error;
            ss += centered * centered;
        }
        out.std = std::sqrt(ss / static_cast<double>(q - 1));
    }

    out.smape_excluded = q - smape_count;
    if (smape_count > 0) {
        out.smape_pct = 2.0 / static_cast<double>(smape_count) * smape_terms * 100.0;
    }

    if (sum_abs > 0.0) {
        const double mean_market = sum_market / static_cast<double>(q);
        if (!(mean_market > 0.0)) {
            throw std::domain_error(
                "compute_indicators: APE undefined, mean market price is zero");
        }
        out.ape_pct = sum_abs / (static_cast<double>(q) * mean_market) * 100.0;
    }

    assert(std::abs(out.rmse * out.rmse -
                    (out.std * out.std * static_cast<double>(q - 1) / static_cast<double>(q) +
                     out.mean_error * out.mean_error)) <
           1e-9 * std::max(1.0, out.rmse * out.rmse));
    return out;
}

}  // namespace mamc
