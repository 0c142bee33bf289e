#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "mamc/date.hpp"
#include "mamc/market_data.hpp"

namespace mamc {

struct ReturnPoint {
    Date date;  // date of the later close in the pair
    double y = 0.0;
};

struct ReturnSeries {
    std::vector<ReturnPoint> points;
};

// A rolling calibration window is a contiguous view into a ReturnSeries.
using ReturnWindow = std::span<const ReturnPoint>;

// Daily log returns y_t = ln(S_t / S_{t-1}), dated at the later day.
inline ReturnSeries log_returns(const PriceSeries& series) {
    if (series.points.size() < 2) {
        throw std::invalid_argument("log_returns: need at least 2 prices");
    }
    ReturnSeries out;
    out.points.reserve(series.points.size() - 1);
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        out.points.push_back({series.points[i].date,
                              std::log(series.points[i].close / series.points[i - 1].close)});
    }
    return out;
}

// Calibrated expected-return model: tomorrow's expected return is
// alpha * (today's return), residual noise has per-day stdev sigma_theta.
struct ArModel {
    double alpha = 0.0;
    double sigma_theta = 0.0;
    int window_len = 0;   // N, number of returns in the fit window
    Date fit_date;        // date of the most recent return in the window
    bool degenerate = false;  // all lagged returns were zero; alpha forced to 0
};

// No-intercept least squares over the N-1 consecutive pairs inside the
// window: alpha = sum(y_i * y_{i-1}) / sum(y_{i-1}^2). sigma_theta is the
// population stdev (divide by count) of the residual set y_i - alpha*y_{i-1}.
inline ArModel fit_ar1(ReturnWindow window) {
    const std::size_t n = window.size();
    if (n < 2) {
        throw std::invalid_argument("fit_ar1: window shorter than 2 returns");
    }

    ArModel model;
    model.window_len = static_cast<int>(n);
    model.fit_date = window.back().date;

    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        num += window[i].y * window[i - 1].y;
        den += window[i - 1].y * window[i - 1].y;
    }
    if (den == 0.0) {
        model.alpha = 0.0;
        model.degenerate = true;
    } else {
        model.alpha = num / den;
    }

    const std::size_t m = n - 1;  // residual count
    double mean = 0.0;
    std::vector<double> residuals(m);
    for (std::size_t i = 1; i < n; ++i) {
        residuals[i - 1] = window[i].y - model.alpha * window[i - 1].y;
        mean += residuals[i - 1];
    }
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (const double r : residuals) {
        ss += (r - mean) * (r - mean);
    }
    model.sigma_theta = std::sqrt(ss / static_cast<double>(m));
    return model;
}

inline double expected_return(const ArModel& model, double y_prev) {
    return model.alpha * y_prev;
}

}  // namespace mamc
