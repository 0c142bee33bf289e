#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "mamc/mc_engine.hpp"
#include "support/oracles.hpp"

using namespace mamc;

namespace {

ArModel model_of(double alpha, double sigma_theta) {
    ArModel m;
    m.alpha = alpha;
    m.sigma_theta = sigma_theta;
    m.window_len = 252;
    return m;
}

// deterministic scripted noise for hand-checked paths
struct ScriptedNoise {
    std::vector<double> values;
    std::size_t next = 0;
    double operator()() { return values.at(next++); }
};

McConfig config(long paths, std::uint64_t seed, int horizon, double rate = 0.0) {
    McConfig cfg;
    cfg.num_paths = paths;
    cfg.master_seed = seed;
    cfg.horizon_days = horizon;
    cfg.rate_annual = rate;
    return cfg;
}

}  // namespace

TEST_CASE("terminal price with zero dynamics is the spot") {
    ScriptedNoise noise{{0.4, -1.2, 0.7, 0.1, 2.0}, 0};
    CHECK(simulate_terminal_price(model_of(0.0, 0.0), 0.33, 100.0, 5, noise) == 100.0);
}

TEST_CASE("terminal price compounds a persistent return") {
    ScriptedNoise noise{{0.0, 0.0, 0.0}, 0};
    CHECK_THAT(simulate_terminal_price(model_of(1.0, 0.0), 0.01, 100.0, 3, noise),
               Catch::Matchers::WithinRel(100.0 * std::exp(0.03), 1e-13));
}

TEST_CASE("terminal price follows the hand-iterated recursion") {
    // y1 = 0.5*0.01 + 0.02*1 = 0.025; y2 = 0.5*0.025 - 0.02 = -0.0075
    ScriptedNoise noise{{1.0, -1.0}, 0};
    CHECK_THAT(simulate_terminal_price(model_of(0.5, 0.02), 0.01, 100.0, 2, noise),
               Catch::Matchers::WithinRel(100.0 * std::exp(0.0175), 1e-13));
}

TEST_CASE("deterministic config prices intrinsic with zero error") {
    const auto pair = price_pair_mc(model_of(0.0, 0.0), 100.0, 105.0, 0.02,
                                    config(1000, 7, 5));
    CHECK(pair.call.premium == 5.0);
    CHECK(pair.call.std_error == 0.0);
    CHECK(pair.put.premium == 0.0);
    CHECK(pair.put.std_error == 0.0);
    CHECK(pair.call.num_paths == 1000);
}

TEST_CASE("fixed seeds reproduce bit-identical prices") {
    const auto cfg = config(20000, 42, 5);
    const auto a = price_pair_mc(model_of(0.2, 0.01), 100.0, 101.0, 0.001, cfg);
    const auto b = price_pair_mc(model_of(0.2, 0.01), 100.0, 101.0, 0.001, cfg);
    CHECK(a.call.premium == b.call.premium);
    CHECK(a.call.std_error == b.call.std_error);
    CHECK(a.put.premium == b.put.premium);
    CHECK(a.put.std_error == b.put.std_error);
    CHECK(a.mean_terminal == b.mean_terminal);
}

TEST_CASE("worker count does not change the result") {
    auto cfg1 = config(50000, 9, 3, 0.01);
    auto cfg4 = cfg1;
    cfg4.num_workers = 4;
    const auto a = price_pair_mc(model_of(0.3, 0.012), 100.0, 99.5, -0.002, cfg1);
    const auto b = price_pair_mc(model_of(0.3, 0.012), 100.0, 99.5, -0.002, cfg4);
    CHECK(a.call.premium == b.call.premium);
    CHECK(a.call.std_error == b.call.std_error);
    CHECK(a.put.premium == b.put.premium);
    CHECK(a.put.std_error == b.put.std_error);
}

TEST_CASE("call minus put equals the discounted forward over the same paths") {
    const auto cfg = config(10000, 11, 5, 0.015);
    const auto pair = price_pair_mc(model_of(0.1, 0.01), 100.0, 100.0, 0.003, cfg);
    const double rhs = pair.discount * (pair.mean_terminal - 100.0);
    CHECK_THAT(pair.call.premium - pair.put.premium, Catch::Matchers::WithinAbs(rhs, 1e-10));
}

TEST_CASE("premiums are monotone in strike over a fixed path set") {
    const auto cfg = config(20000, 3, 5);
    double prev_call = 1e300;
    double prev_put = -1.0;
    for (const double strike : {90.0, 95.0, 100.0, 105.0, 110.0}) {
        const auto pair = price_pair_mc(model_of(0.2, 0.015), strike, 100.0, 0.0, cfg);
        CHECK(pair.call.premium <= prev_call);
        CHECK(pair.put.premium >= prev_put);
        prev_call = pair.call.premium;
        prev_put = pair.put.premium;
    }
}

TEST_CASE("premiums respect the fixed-path-set bounds") {
    const auto cfg = config(20000, 17, 5, 0.02);
    const auto pair = price_pair_mc(model_of(0.1, 0.02), 100.0, 100.0, 0.001, cfg);
    CHECK(pair.call.premium >= 0.0);
    CHECK(pair.put.premium >= 0.0);
    CHECK(pair.call.premium <= pair.discount * pair.mean_terminal * (1.0 + 1e-12));
    CHECK(pair.put.premium <= pair.discount * 100.0 * (1.0 + 1e-12));
}

TEST_CASE("standard error shrinks like the square root of the path count") {
    const auto small = price_pair_mc(model_of(0.0, 0.01), 100.0, 100.0, 0.0,
                                     config(10000, 23, 5));
    const auto large = price_pair_mc(model_of(0.0, 0.01), 100.0, 100.0, 0.0,
                                     config(1000000, 23, 5));
    const double ratio = small.call.std_error / large.call.std_error;
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);
}

TEST_CASE("monte carlo agrees with the zero-drift lognormal oracle") {
    // alpha = 0 makes the log growth N(0, sigma^2 * T)
    const auto pair = price_pair_mc(model_of(0.0, 0.01), 100.0, 100.0, 0.0,
                                    config(100000, 5, 5));
    const double oracle =
        oracles::lognormal_call_expectation(100.0, 0.0, 0.01 * std::sqrt(5.0), 100.0, 1.0);
    CHECK_THAT(pair.call.premium,
               Catch::Matchers::WithinAbs(oracle, 4.0 * pair.call.std_error));
}

TEST_CASE("engine rejects invalid configs") {
    CHECK_THROWS_AS(price_pair_mc(model_of(0.0, 0.01), 100.0, 100.0, 0.0, config(0, 1, 5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(price_pair_mc(model_of(0.0, 0.01), 100.0, 100.0, 0.0, config(10, 1, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(price_pair_mc(model_of(0.0, 0.01), -5.0, 100.0, 0.0, config(10, 1, 5)),
                    std::invalid_argument);
}

TEST_CASE("single-sided pricing matches the pair") {
    const auto cfg = config(5000, 31, 4, 0.01);
    const auto pair = price_pair_mc(model_of(0.25, 0.01), 101.0, 100.0, 0.002, cfg);
    const auto call = price_option_mc(model_of(0.25, 0.01), OptionKind::Call, 101.0, 100.0,
                                      0.002, cfg);
    const auto put = price_option_mc(model_of(0.25, 0.01), OptionKind::Put, 101.0, 100.0,
                                     0.002, cfg);
    CHECK(call.premium == pair.call.premium);
    CHECK(put.premium == pair.put.premium);
}
