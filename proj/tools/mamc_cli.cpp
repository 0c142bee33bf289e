// Command-line front end: single-option pricing, full backtests, report
// rendering. Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mamc/mamc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

mamc::PriceSeries load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw mamc::DataError(path + ": cannot open file");
    }
    return mamc::load_index_series(in, path);
}

std::vector<mamc::OptionContract> load_chain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw mamc::DataError(path + ": cannot open file");
    }
    return mamc::load_option_chain(in, path);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw mamc::DataError(out_path + ": cannot open for writing");
    }
    out << text;
}

std::vector<mamc::Model> parse_model_list(const std::string& tokens) {
    std::vector<mamc::Model> models;
    std::stringstream ss(tokens);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        models.push_back(mamc::model_from_token(token));
    }
    if (models.empty()) {
        throw std::invalid_argument("no models selected");
    }
    return models;
}

struct PriceArgs {
    std::string index_path;
    std::string kind = "C";
    double strike = 0.0;
    std::string expiry;
    std::string date;
    double rate = 0.0;
    long paths = 50000;
    std::uint64_t seed = 0;
    int window = 252;
    std::string model = "all";
    int day_count = 252;
    int crr_steps = 0;
    int threads = 1;
    bool json = false;
};

int run_price(const PriceArgs& args) {
    const mamc::OptionKind kind = mamc::option_kind_from_token(args.kind);
    const mamc::Date pricing_date = mamc::Date::parse(args.date);
    const mamc::Date expiry = mamc::Date::parse(args.expiry);
    if (expiry <= pricing_date) {
        throw mamc::DataError("expiry " + expiry.to_string() + " is not after pricing date " +
                              pricing_date.to_string());
    }

    const mamc::PriceSeries index = load_index_file(args.index_path);
    const int pos = index.position_of(pricing_date);
    if (pos < 0) {
        throw mamc::DataError("pricing date " + pricing_date.to_string() +
                              " is not a trading day in " + index.label);
    }
    if (pos < args.window + 1) {
        throw mamc::DataError("insufficient index history before " + pricing_date.to_string() +
                              " (need " + std::to_string(args.window + 1) +
                              " prior trading days)");
    }

    // Horizon in trading days: counted on the index calendar where it covers
    // the option's life, extended by the Mon-Fri calendar beyond its end.
    const mamc::Date last_index_date = index.points.back().date;
    int horizon = mamc::detail::trading_days_between(index, pos, expiry);
    if (expiry > last_index_date) {
        horizon += mamc::weekdays_between(last_index_date, expiry);
    }
    if (horizon < 1) {
        throw mamc::DataError("no trading days remain before expiry " + expiry.to_string());
    }

    const mamc::ReturnSeries returns = mamc::log_returns(index);
    const double spot = index.points[static_cast<std::size_t>(pos)].close;
    const double y_start = returns.points[static_cast<std::size_t>(pos) - 1].y;
    const mamc::ReturnWindow window(returns.points.data() + (pos - 1 - args.window),
                                    static_cast<std::size_t>(args.window));
    const double t_years = static_cast<double>(horizon) / args.day_count;

    const bool want_mamc = args.model == "all" || args.model == "mamc";
    const bool want_bsm = args.model == "all" || args.model == "bsm";
    const bool want_bt = args.model == "all" || args.model == "bt";

    nlohmann::json lines = nlohmann::json::array();
    std::string text;
    char buf[128];

    if (want_mamc) {
        const mamc::ArModel ar = mamc::fit_ar1(window);
        mamc::McConfig mc;
        mc.num_paths = args.paths;
        mc.master_seed = args.seed;
        mc.horizon_days = horizon;
        mc.rate_annual = args.rate;
        mc.day_count = args.day_count;
        mc.num_workers = args.threads;
        const mamc::McPrice price =
            mamc::price_option_mc(ar, kind, args.strike, spot, y_start, mc);
        std::snprintf(buf, sizeof(buf), "MAMC %.4f %.4f\n", price.premium, price.std_error);
        text += buf;
        lines.push_back({{"model", "MAMC"},
                         {"premium", price.premium},
                         {"std_error", price.std_error},
                         {"num_paths", price.num_paths}});
    }
    if (want_bsm || want_bt) {
        mamc::MarketSnapshot snap;
        snap.spot = spot;
        snap.strike = args.strike;
        snap.rate_annual = args.rate;
        snap.time_years = t_years;
        snap.vol_annual = mamc::annualized_volatility(window, args.day_count);
        if (want_bsm) {
            const double premium = mamc::bsm_price(snap, kind);
            std::snprintf(buf, sizeof(buf), "BSM %.4f\n", premium);
            text += buf;
            lines.push_back({{"model", "BSM"}, {"premium", premium}});
        }
        if (want_bt) {
            const int steps = args.crr_steps > 0
                                  ? args.crr_steps
                                  : mamc::default_crr_steps(t_years, args.day_count);
            const double premium = mamc::crr_price(snap, kind, steps);
            std::snprintf(buf, sizeof(buf), "BT %.4f\n", premium);
            text += buf;
            lines.push_back({{"model", "BT"}, {"premium", premium}});
        }
    }

    if (args.json) {
        std::cout << lines.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return kExitOk;
}

struct BacktestArgs {
    std::string index_path;
    std::string chain_path;
    double rate = 0.0;
    int window = 252;
    long paths = 50000;
    std::uint64_t seed = 0;
    int day_count = 252;
    int crr_steps = 0;
    std::string models = "mamc,bsm,bt";
    std::string moneyness = "daily";
    int threads = 1;
    std::string format = "text";
    std::string out_path;
};

int run_backtest_cmd(const BacktestArgs& args) {
    mamc::BacktestConfig cfg;
    cfg.window_len = args.window;
    cfg.num_paths = args.paths;
    cfg.master_seed = args.seed;
    cfg.rate_annual = args.rate;
    cfg.day_count = args.day_count;
    cfg.crr_steps = args.crr_steps;
    cfg.models = parse_model_list(args.models);
    cfg.moneyness_mode = mamc::detail::moneyness_mode_from_token(args.moneyness);
    cfg.num_threads = args.threads;

    const mamc::PriceSeries index = load_index_file(args.index_path);
    const auto chain = load_chain_file(args.chain_path);
    const mamc::BacktestReport report = mamc::run_backtest(cfg, index, chain);

    write_output(mamc::render_report(report, mamc::report_format_from_token(args.format)),
                 args.out_path);
    return kExitOk;
}

struct ReportArgs {
    std::string in_path;
    std::string format = "text";
    std::string out_path;
};

int run_report(const ReportArgs& args) {
    std::ifstream in(args.in_path, std::ios::binary);
    if (!in) {
        throw mamc::DataError(args.in_path + ": cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const mamc::BacktestReport report = mamc::report_from_json(buffer.str());

    write_output(mamc::render_report(report, mamc::report_format_from_token(args.format)),
                 args.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MAMC option pricing: AR(1) Monte Carlo with BSM and binomial baselines"};
    app.require_subcommand(1);

    PriceArgs price_args;
    CLI::App* price = app.add_subcommand("price", "Price one option on one date");
    price->add_option("--index", price_args.index_path, "Underlying index CSV (date,close)")
        ->required();
    price->add_option("--kind", price_args.kind, "Option kind: C or P")
        ->required()
        ->check(CLI::IsMember({"C", "P"}));
    price->add_option("--strike", price_args.strike, "Strike price")
        ->required()
        ->check(CLI::PositiveNumber);
    price->add_option("--expiry", price_args.expiry, "Expiry date (YYYY-MM-DD)")->required();
    price->add_option("--date", price_args.date, "Pricing date (YYYY-MM-DD)")->required();
    price->add_option("--rate", price_args.rate, "Annual risk-free rate")->required();
    price->add_option("--paths", price_args.paths, "Monte Carlo paths (U)")
        ->check(CLI::PositiveNumber);
    price->add_option("--seed", price_args.seed, "Master RNG seed");
    price->add_option("--window", price_args.window, "Calibration window length (N)")
        ->check(CLI::Range(2, 1 << 20));
    price->add_option("--model", price_args.model, "Model: mamc, bsm, bt or all")
        ->check(CLI::IsMember({"mamc", "bsm", "bt", "all"}));
    price->add_option("--day-count", price_args.day_count, "Trading days per year")
        ->check(CLI::PositiveNumber);
    price->add_option("--crr-steps", price_args.crr_steps, "Binomial steps (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    price->add_option("--threads", price_args.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    price->add_flag("--json", price_args.json, "Machine-readable output");

    BacktestArgs bt_args;
    CLI::App* backtest = app.add_subcommand("backtest", "Run the full chain backtest");
    backtest->add_option("--index", bt_args.index_path, "Underlying index CSV (date,close)")
        ->required();
    backtest->add_option("--chain", bt_args.chain_path, "Option chain CSV")->required();
    backtest->add_option("--rate", bt_args.rate, "Annual risk-free rate")->required();
    backtest->add_option("--window", bt_args.window, "Calibration window length (N)")
        ->check(CLI::Range(2, 1 << 20));
    backtest->add_option("--paths", bt_args.paths, "Monte Carlo paths (U)")
        ->check(CLI::PositiveNumber);
    backtest->add_option("--seed", bt_args.seed, "Master RNG seed");
    backtest->add_option("--day-count", bt_args.day_count, "Trading days per year")
        ->check(CLI::PositiveNumber);
    backtest->add_option("--crr-steps", bt_args.crr_steps, "Binomial steps (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    backtest->add_option("--models", bt_args.models, "Comma list from mamc,bsm,bt");
    backtest->add_option("--moneyness", bt_args.moneyness, "Classification: daily or at-issue")
        ->check(CLI::IsMember({"daily", "at-issue"}));
    backtest->add_option("--threads", bt_args.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    backtest->add_option("--format", bt_args.format, "Report format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    backtest->add_option("--out", bt_args.out_path, "Output path (default stdout)");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "Render a saved JSON report");
    report->add_option("--in", report_args.in_path, "Report JSON path")->required();
    report->add_option("--format", report_args.format, "Report format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    report->add_option("--out", report_args.out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (price->parsed()) return run_price(price_args);
        if (backtest->parsed()) return run_backtest_cmd(bt_args);
        return run_report(report_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
