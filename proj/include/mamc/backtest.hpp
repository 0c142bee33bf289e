#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mamc/closed_form.hpp"
#include "mamc/errors.hpp"
#include "mamc/market_data.hpp"
#include "mamc/mc_engine.hpp"
#include "mamc/metrics.hpp"
#include "mamc/returns_ar.hpp"
#include "mamc/rng.hpp"

namespace mamc {

enum class Model { MAMC, BSM, BT };
enum class Group { All, Call, Put, ITM, NTM, OTM };
enum class MoneynessMode { Daily, AtIssue };
enum class ReportFormat { Text, Csv, Json };

inline std::string_view to_string(Model m) {
    switch (m) {
        case Model::MAMC: return "MAMC";
        case Model::BSM: return "BSM";
        default: return "BT";
    }
}

inline std::string_view to_string(Group g) {
    switch (g) {
        case Group::All: return "All";
        case Group::Call: return "Call";
        case Group::Put: return "Put";
        case Group::ITM: return "ITM";
        case Group::NTM: return "NTM";
        default: return "OTM";
    }
}

inline Model model_from_token(std::string_view token) {
    if (token == "mamc" || token == "MAMC") return Model::MAMC;
    if (token == "bsm" || token == "BSM") return Model::BSM;
    if (token == "bt" || token == "BT") return Model::BT;
    throw std::invalid_argument("unknown model '" + std::string(token) + "'");
}

inline ReportFormat report_format_from_token(std::string_view token) {
    if (token == "text") return ReportFormat::Text;
    if (token == "csv") return ReportFormat::Csv;
    if (token == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format token '" + std::string(token) + "'");
}

struct BacktestConfig {
    int window_len = 252;                           // N
    long num_paths = 50000;                         // U
    std::uint64_t master_seed = 0;
    double rate_annual = 0.0;                       // r, no market default
    int day_count = 252;
    int crr_steps = 0;                              // 0 = max(50, ceil(T * day_count))
    std::vector<Model> models{Model::MAMC, Model::BSM, Model::BT};
    MoneynessMode moneyness_mode = MoneynessMode::Daily;
    int num_threads = 1;
};

inline void validate_config(const BacktestConfig& cfg) {
    if (cfg.window_len < 2) throw std::invalid_argument("config: window_len must be >= 2");
    if (cfg.num_paths < 1) throw std::invalid_argument("config: num_paths must be >= 1");
    if (cfg.day_count < 1) throw std::invalid_argument("config: day_count must be >= 1");
    if (cfg.crr_steps < 0) throw std::invalid_argument("config: crr_steps must be >= 0");
    if (cfg.num_threads < 1) throw std::invalid_argument("config: num_threads must be >= 1");
    if (cfg.models.empty()) throw std::invalid_argument("config: no models selected");
    std::set<Model> seen(cfg.models.begin(), cfg.models.end());
    if (seen.size() != cfg.models.size()) {
        throw std::invalid_argument("config: duplicate model selection");
    }
}

struct BacktestReport {
    BacktestConfig config;
    std::optional<Date> first_pricing_date;
    std::optional<Date> last_pricing_date;
    long contracts_total = 0;
    long contracts_priced = 0;
    long contracts_skipped = 0;  // no valid pricing day
    long quotes_total = 0;
    long quotes_priced = 0;
    long quotes_skipped_expiry = 0;     // quote on expiry or with no trading day left
    long quotes_skipped_off_index = 0;  // quote date absent from the index calendar
    std::map<std::pair<Model, Group>, IndicatorSet> cells;
};

namespace detail {

struct BacktestTask {
    std::size_t contract_idx = 0;
    Date date;
    double market = 0.0;
    int index_pos = 0;  // position of date in the price series
    int horizon = 0;    // trading days from date to expiry
    Group kind_group = Group::Call;
    Group moneyness_group = Group::OTM;
};

// Seed for one (contract, pricing day) cell: depends only on the master seed
// and the contract identity, never on position in the chain, so adding
// contracts does not perturb existing results.
inline std::uint64_t task_seed(std::uint64_t master, const OptionContract& c, Date date) {
    std::uint64_t s = rng::mix(master, static_cast<std::uint64_t>(c.kind));
    s = rng::mix(s, c.strike);
    s = rng::mix(s, c.issue_date);
    s = rng::mix(s, c.expiry_date);
    return rng::mix(s, date);
}

inline int trading_days_between(const PriceSeries& index, int pos, Date until) {
    const auto begin = index.points.begin() + pos + 1;
    const auto end = std::upper_bound(
        begin, index.points.end(), until,
        [](Date d, const PricePoint& p) { return d < p.date; });
    return static_cast<int>(end - begin);
}

}  // namespace detail

// Full backtest protocol: for every quoted trading day strictly before
// expiry, calibrate on the trailing window_len returns, price with each
// selected model, pair against the market quote, and aggregate indicators
// by panel. Deterministic for a fixed config regardless of num_threads.
inline BacktestReport run_backtest(const BacktestConfig& cfg, const PriceSeries& index,
                                   const std::vector<OptionContract>& chain) {
    validate_config(cfg);
    if (chain.empty()) throw std::invalid_argument("run_backtest: empty option chain");
    if (index.points.size() < 2) {
        throw std::invalid_argument("run_backtest: index series too short");
    }

    BacktestReport report;
    report.config = cfg;
    report.contracts_total = static_cast<long>(chain.size());

    // Canonical contract order, independent of file row order.
    std::vector<OptionContract> contracts = chain;
    std::sort(contracts.begin(), contracts.end(),
              [](const OptionContract& a, const OptionContract& b) { return a.key() < b.key(); });
    for (const auto& c : contracts) validate_contract(c);

    const ReturnSeries returns = log_returns(index);

    // Same-kind strikes quoted per date, for daily moneyness classification.
    std::map<std::pair<Date, OptionKind>, std::vector<double>> strikes_by_date;
    std::map<std::pair<Date, OptionKind>, std::vector<double>> strikes_by_issue;
    for (const auto& c : contracts) {
        for (const auto& [date, price] : c.quotes) {
            strikes_by_date[{date, c.kind}].push_back(c.strike);
        }
        strikes_by_issue[{c.issue_date, c.kind}].push_back(c.strike);
    }
    const auto dedupe = [](std::map<std::pair<Date, OptionKind>, std::vector<double>>& m) {
        for (auto& [key, strikes] : m) {
            std::sort(strikes.begin(), strikes.end());
            strikes.erase(std::unique(strikes.begin(), strikes.end()), strikes.end());
        }
    };
    dedupe(strikes_by_date);
    dedupe(strikes_by_issue);

    // Build the (contract, pricing day) task list.
    std::vector<detail::BacktestTask> tasks;
    std::optional<Date> first_insufficient;
    for (std::size_t ci = 0; ci < contracts.size(); ++ci) {
        const auto& contract = contracts[ci];
        bool any_priced = false;
        for (const auto& [date, market] : contract.quotes) {
            ++report.quotes_total;
            if (date == contract.expiry_date) {
                ++report.quotes_skipped_expiry;
                continue;
            }
            const int pos = index.position_of(date);
            if (pos < 0) {
                ++report.quotes_skipped_off_index;
                continue;
            }
            const int horizon = detail::trading_days_between(index, pos, contract.expiry_date);
            if (horizon == 0) {
                ++report.quotes_skipped_expiry;
                continue;
            }
            if (pos < cfg.window_len + 1) {
                if (!first_insufficient || date < *first_insufficient) {
                    first_insufficient = date;
                }
                continue;
            }

            detail::BacktestTask task;
            task.contract_idx = ci;
            task.date = date;
            task.market = market;
            task.index_pos = pos;
            task.horizon = horizon;
            task.kind_group = contract.kind == OptionKind::Call ? Group::Call : Group::Put;

            if (cfg.moneyness_mode == MoneynessMode::Daily) {
                // Prior trading day's close against the strikes quoted today.
                const double prior_close = index.points[static_cast<std::size_t>(pos) - 1].close;
                const auto& strikes = strikes_by_date.at({date, contract.kind});
                task.moneyness_group = [&] {
                    switch (classify_moneyness(contract, strikes, prior_close)) {
                        case Moneyness::ITM: return Group::ITM;
                        case Moneyness::NTM: return Group::NTM;
                        default: return Group::OTM;
                    }
                }();
            } else {
                const auto it = std::lower_bound(
                    index.points.begin(), index.points.end(), contract.issue_date,
                    [](const PricePoint& p, Date d) { return p.date < d; });
                if (it == index.points.begin()) {
                    throw DataError("run_backtest: no index close before issue date " +
                                    contract.issue_date.to_string());
                }
                const double prior_close = std::prev(it)->close;
                const auto& strikes = strikes_by_issue.at({contract.issue_date, contract.kind});
                task.moneyness_group = [&] {
                    switch (classify_moneyness(contract, strikes, prior_close)) {
                        case Moneyness::ITM: return Group::ITM;
                        case Moneyness::NTM: return Group::NTM;
                        default: return Group::OTM;
                    }
                }();
            }

            tasks.push_back(task);
            any_priced = true;
        }
        if (any_priced) {
            ++report.contracts_priced;
        } else {
            ++report.contracts_skipped;
        }
    }

    if (first_insufficient) {
        throw DataError("run_backtest: insufficient index history before " +
                        first_insufficient->to_string() + " (need " +
                        std::to_string(cfg.window_len + 1) + " prior trading days)");
    }

    report.quotes_priced = static_cast<long>(tasks.size());
    for (const auto& task : tasks) {
        if (!report.first_pricing_date || task.date < *report.first_pricing_date) {
            report.first_pricing_date = task.date;
        }
        if (!report.last_pricing_date || task.date > *report.last_pricing_date) {
            report.last_pricing_date = task.date;
        }
    }

    // Price every task with every selected model. Tasks are independent;
    // results land in a pre-sized slot keyed by task index.
    std::vector<std::map<Model, double>> premiums(tasks.size());
    const auto run_task = [&](std::size_t ti) {
        const auto& task = tasks[ti];
        const auto& contract = contracts[task.contract_idx];
        const int j = task.index_pos;
        const double spot = index.points[static_cast<std::size_t>(j)].close;
        const double y_start = returns.points[static_cast<std::size_t>(j) - 1].y;
        const ReturnWindow window(
            returns.points.data() + (j - 1 - cfg.window_len),
            static_cast<std::size_t>(cfg.window_len));
        const double t_years = static_cast<double>(task.horizon) / cfg.day_count;

        for (const Model model : cfg.models) {
            double premium = 0.0;
            switch (model) {
                case Model::MAMC: {
                    const ArModel ar = fit_ar1(window);
                    McConfig mc;
                    mc.num_paths = cfg.num_paths;
                    mc.master_seed = detail::task_seed(cfg.master_seed, contract, task.date);
                    mc.horizon_days = task.horizon;
                    mc.rate_annual = cfg.rate_annual;
                    mc.day_count = cfg.day_count;
                    const McPricePair pair =
                        price_pair_mc(ar, contract.strike, spot, y_start, mc);
                    premium = contract.kind == OptionKind::Call ? pair.call.premium
                                                                : pair.put.premium;
                    break;
                }
                case Model::BSM:
                case Model::BT: {
                    MarketSnapshot snap;
                    snap.spot = spot;
                    snap.strike = contract.strike;
                    snap.rate_annual = cfg.rate_annual;
                    snap.time_years = t_years;
                    snap.vol_annual = annualized_volatility(window, cfg.day_count);
                    if (model == Model::BSM) {
                        premium = bsm_price(snap, contract.kind);
                    } else {
                        const int steps = cfg.crr_steps > 0
                                              ? cfg.crr_steps
                                              : default_crr_steps(t_years, cfg.day_count);
                        premium = crr_price(snap, contract.kind, steps);
                    }
                    break;
                }
            }
            premiums[ti][model] = premium;
        }
    };

    if (cfg.num_threads <= 1 || tasks.size() <= 1) {
        for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
    } else {
        std::atomic<std::size_t> next{0};
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.num_threads), tasks.size());
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t ti = next.fetch_add(1); ti < tasks.size();
                     ti = next.fetch_add(1)) {
                    run_task(ti);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // Ordered reduction into (model, group) pair lists.
    std::map<std::pair<Model, Group>, std::vector<PricePair>> cell_pairs;
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        const auto& task = tasks[ti];
        for (const Model model : cfg.models) {
            const PricePair pair{task.market, premiums[ti].at(model)};
            cell_pairs[{model, Group::All}].push_back(pair);
            cell_pairs[{model, task.kind_group}].push_back(pair);
            cell_pairs[{model, task.moneyness_group}].push_back(pair);
        }
    }
    for (const auto& [key, pairs] : cell_pairs) {
        report.cells[key] = compute_indicators(pairs);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

inline const Group kGroupOrder[] = {Group::All,  Group::Call, Group::Put,
                                    Group::ITM, Group::NTM,  Group::OTM};

inline const char* kIndicatorNames[] = {"Mean error", "STD", "RMSE (NTD)", "SMAPE (%)",
                                        "APE (%)"};

inline double indicator_value(const IndicatorSet& s, int which) {
    switch (which) {
        case 0: return s.mean_error;
        case 1: return s.std;
        case 2: return s.rmse;
        case 3: return s.smape_pct;
        default: return s.ape_pct;
    }
}

inline std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

// Right-pad by display columns; the em dash placeholder is multi-byte.
inline std::string pad_left(const std::string& cell, std::size_t width) {
    std::size_t display = 0;
    for (const char c : cell) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++display;
    }
    std::string out;
    if (display < width) out.assign(width - display, ' ');
    return out + cell;
}

inline std::string moneyness_mode_token(MoneynessMode m) {
    return m == MoneynessMode::Daily ? "daily" : "at-issue";
}

inline MoneynessMode moneyness_mode_from_token(const std::string& t) {
    if (t == "daily") return MoneynessMode::Daily;
    if (t == "at-issue") return MoneynessMode::AtIssue;
    throw std::invalid_argument("unknown moneyness mode '" + t + "'");
}

inline std::string render_text(const BacktestReport& r) {
    std::string out;
    out += "weekly-option backtest report\n";
    out += "=============================\n";
    out += "models:";
    for (const Model m : r.config.models) {
        out += ' ';
        out += to_string(m);
    }
    out += '\n';
    out += "window_len=" + std::to_string(r.config.window_len) +
           " num_paths=" + std::to_string(r.config.num_paths) +
           " master_seed=" + std::to_string(r.config.master_seed) + "\n";
    out += "rate_annual=" + format_double("%.10g", r.config.rate_annual) +
           " day_count=" + std::to_string(r.config.day_count) + " crr_steps=" +
           (r.config.crr_steps > 0 ? std::to_string(r.config.crr_steps) : std::string("auto")) +
           " moneyness=" + moneyness_mode_token(r.config.moneyness_mode) + "\n";
    if (r.first_pricing_date) {
        out += "pricing dates: " + r.first_pricing_date->to_string() + " .. " +
               r.last_pricing_date->to_string() + "\n";
    } else {
        out += "pricing dates: none\n";
    }
    out += "contracts: total=" + std::to_string(r.contracts_total) +
           " priced=" + std::to_string(r.contracts_priced) +
           " skipped=" + std::to_string(r.contracts_skipped) + "\n";
    out += "quotes: total=" + std::to_string(r.quotes_total) +
           " priced=" + std::to_string(r.quotes_priced) +
           " expiry_day=" + std::to_string(r.quotes_skipped_expiry) +
           " off_index=" + std::to_string(r.quotes_skipped_off_index) + "\n";

    // Per-group pair counts (identical across models by construction).
    out += "pairs:";
    for (const Group g : kGroupOrder) {
        long count = 0;
        for (const Model m : r.config.models) {
            const auto it = r.cells.find({m, g});
            if (it != r.cells.end()) {
                count = it->second.count;
                break;
            }
        }
        out += ' ';
        out += std::string(to_string(g)) + "=" + std::to_string(count);
    }
    out += '\n';

    std::string exclusions;
    for (const auto& [key, cell] : r.cells) {
        if (cell.smape_excluded > 0) {
            exclusions += ' ';
            exclusions += std::string(to_string(key.first)) + ":" +
                          std::string(to_string(key.second)) + "=" +
                          std::to_string(cell.smape_excluded);
        }
    }
    if (!exclusions.empty()) {
        out += "smape exclusions (market+model=0 pairs):" + exclusions + "\n";
    }
    out += '\n';

    const std::size_t group_width = 6;
    const std::size_t cell_width = 10;
    const std::size_t models_n = r.config.models.size();

    // Header rows: indicator band, then one column per model inside the band.
    std::string head1 = pad_left("Group", group_width);
    std::string head2 = pad_left("", group_width);
    for (const char* name : kIndicatorNames) {
        head1 += " |";
        head2 += " |";
        head1 += pad_left(name, cell_width * models_n);
        for (const Model m : r.config.models) {
            head2 += pad_left(std::string(to_string(m)), cell_width);
        }
    }
    out += head1 + "\n" + head2 + "\n";

    const auto row_for = [&](Group g) {
        std::string row = pad_left(std::string(to_string(g)), group_width);
        for (int ind = 0; ind < 5; ++ind) {
            row += " |";
            // Best model per (group, indicator): smallest value, mean error
            // judged by magnitude.
            bool have_best = false;
            double best = 0.0;
            int populated = 0;
            for (const Model m : r.config.models) {
                const auto it = r.cells.find({m, g});
                if (it == r.cells.end()) continue;
                ++populated;
                double v = indicator_value(it->second, ind);
                if (ind == 0) v = std::abs(v);
                if (!have_best || v < best) {
                    best = v;
                    have_best = true;
                }
            }
            for (const Model m : r.config.models) {
                const auto it = r.cells.find({m, g});
                if (it == r.cells.end()) {
                    row += pad_left("—", cell_width);
                    continue;
                }
                const double v = indicator_value(it->second, ind);
                std::string cell = format_double("%.2f", v);
                const double ranked = ind == 0 ? std::abs(v) : v;
                if (populated > 1 && ranked == best) cell += '*';
                row += pad_left(cell, cell_width);
            }
        }
        return row + "\n";
    };

    out += row_for(Group::All);
    out += "Panel A: Type\n";
    out += row_for(Group::Call);
    out += row_for(Group::Put);
    out += "Panel B: Moneyness\n";
    out += row_for(Group::ITM);
    out += row_for(Group::NTM);
    out += row_for(Group::OTM);
    return out;
}

inline std::string render_csv(const BacktestReport& r) {
    std::string out = "# models=";
    for (std::size_t i = 0; i < r.config.models.size(); ++i) {
        if (i > 0) out += '+';
        out += to_string(r.config.models[i]);
    }
    out += " window_len=" + std::to_string(r.config.window_len) +
           " num_paths=" + std::to_string(r.config.num_paths) +
           " master_seed=" + std::to_string(r.config.master_seed) +
           " rate_annual=" + format_double("%.10g", r.config.rate_annual) +
           " day_count=" + std::to_string(r.config.day_count) + " crr_steps=" +
           (r.config.crr_steps > 0 ? std::to_string(r.config.crr_steps) : std::string("auto")) +
           " moneyness=" + moneyness_mode_token(r.config.moneyness_mode) + "\n";
    out += "model,group,count,mean_error,std,rmse,smape_pct,ape_pct,smape_excluded\n";
    for (const Model m : r.config.models) {
        for (const Group g : kGroupOrder) {
            const auto it = r.cells.find({m, g});
            out += std::string(to_string(m)) + "," + std::string(to_string(g)) + ",";
            if (it == r.cells.end()) {
                out += "0,,,,,,\n";
                continue;
            }
            const IndicatorSet& s = it->second;
            out += std::to_string(s.count) + "," + format_double("%.17g", s.mean_error) +
                   "," + format_double("%.17g", s.std) + "," + format_double("%.17g", s.rmse) +
                   "," + format_double("%.17g", s.smape_pct) + "," +
                   format_double("%.17g", s.ape_pct) + "," + std::to_string(s.smape_excluded) +
                   "\n";
        }
    }
    return out;
}

inline nlohmann::json report_to_json(const BacktestReport& r) {
    nlohmann::json j;
    nlohmann::json models = nlohmann::json::array();
    for (const Model m : r.config.models) models.push_back(std::string(to_string(m)));
    j["config"] = {
        {"models", models},
        {"window_len", r.config.window_len},
        {"num_paths", r.config.num_paths},
        {"master_seed", r.config.master_seed},
        {"rate_annual", r.config.rate_annual},
        {"day_count", r.config.day_count},
        {"crr_steps", r.config.crr_steps},
        {"moneyness_mode", moneyness_mode_token(r.config.moneyness_mode)},
    };
    if (r.first_pricing_date) {
        j["date_range"] = {{"first", r.first_pricing_date->to_string()},
                           {"last", r.last_pricing_date->to_string()}};
    } else {
        j["date_range"] = nullptr;
    }
    j["counts"] = {
        {"contracts_total", r.contracts_total},
        {"contracts_priced", r.contracts_priced},
        {"contracts_skipped", r.contracts_skipped},
        {"quotes_total", r.quotes_total},
        {"quotes_priced", r.quotes_priced},
        {"quotes_skipped_expiry", r.quotes_skipped_expiry},
        {"quotes_skipped_off_index", r.quotes_skipped_off_index},
    };
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, s] : r.cells) {
        cells.push_back({
            {"model", std::string(to_string(key.first))},
            {"group", std::string(to_string(key.second))},
            {"count", s.count},
            {"mean_error", s.mean_error},
            {"std", s.std},
            {"rmse", s.rmse},
            {"smape_pct", s.smape_pct},
            {"ape_pct", s.ape_pct},
            {"smape_excluded", s.smape_excluded},
        });
    }
    j["cells"] = cells;
    return j;
}

inline Group group_from_token(const std::string& token) {
    for (const Group g : kGroupOrder) {
        if (token == to_string(g)) return g;
    }
    throw std::invalid_argument("unknown group '" + token + "'");
}

}  // namespace detail

inline std::string render_report(const BacktestReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Text: return detail::render_text(report);
        case ReportFormat::Csv: return detail::render_csv(report);
        default: return detail::report_to_json(report).dump(2) + "\n";
    }
}

// Rebuild a report from its JSON rendering; re-rendering the result yields
// byte-identical output for every format.
inline BacktestReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report JSON parse failed: ") + e.what());
    }
    try {
        BacktestReport r;
        const auto& cfg = j.at("config");
        r.config.models.clear();
        for (const auto& m : cfg.at("models")) {
            r.config.models.push_back(model_from_token(m.get<std::string>()));
        }
        r.config.window_len = cfg.at("window_len").get<int>();
        r.config.num_paths = cfg.at("num_paths").get<long>();
        r.config.master_seed = cfg.at("master_seed").get<std::uint64_t>();
        r.config.rate_annual = cfg.at("rate_annual").get<double>();
        r.config.day_count = cfg.at("day_count").get<int>();
        r.config.crr_steps = cfg.at("crr_steps").get<int>();
        r.config.moneyness_mode =
            detail::moneyness_mode_from_token(cfg.at("moneyness_mode").get<std::string>());
        if (!j.at("date_range").is_null()) {
            r.first_pricing_date = Date::parse(j["date_range"].at("first").get<std::string>());
            r.last_pricing_date = Date::parse(j["date_range"].at("last").get<std::string>());
        }
        const auto& counts = j.at("counts");
        r.contracts_total = counts.at("contracts_total").get<long>();
        r.contracts_priced = counts.at("contracts_priced").get<long>();
        r.contracts_skipped = counts.at("contracts_skipped").get<long>();
        r.quotes_total = counts.at("quotes_total").get<long>();
        r.quotes_priced = counts.at("quotes_priced").get<long>();
        r.quotes_skipped_expiry = counts.at("quotes_skipped_expiry").get<long>();
        r.quotes_skipped_off_index = counts.at("quotes_skipped_off_index").get<long>();
        for (const auto& c : j.at("cells")) {
            IndicatorSet s;
            s.count = c.at("count").get<long>();
            s.mean_error = c.at("mean_error").get<double>();
            s.std = c.at("std").get<double>();
            s.rmse = c.at("rmse").get<double>();
            s.smape_pct = c.at("smape_pct").get<double>();
            s.ape_pct = c.at("ape_pct").get<double>();
            s.smape_excluded = c.at("smape_excluded").get<long>();
            const Model m = model_from_token(c.at("model").get<std::string>());
            const Group g = detail::group_from_token(c.at("group").get<std::string>());
            r.cells[{m, g}] = s;
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report JSON missing fields: ") + e.what());
    }
}

}  // namespace mamc
