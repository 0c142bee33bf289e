#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mamc/date.hpp"
#include "mamc/errors.hpp"
#include "mamc/types.hpp"

namespace mamc {

struct PricePoint {
    Date date;
    double close = 0.0;  // index points, > 0
};

// Dated sequence of underlying closing prices. Invariants: dates strictly
// increasing, every close > 0.
struct PriceSeries {
    std::vector<PricePoint> points;
    std::string label;

    int position_of(Date date) const {
        const auto it = std::lower_bound(
            points.begin(), points.end(), date,
            [](const PricePoint& p, Date d) { return p.date < d; });
        if (it == points.end() || it->date != date) return -1;
        return static_cast<int>(it - points.begin());
    }
};

inline void validate_price_series(const PriceSeries& series, const std::string& source = "") {
    const std::string where = source.empty() ? "price series" : source;
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const auto& p = series.points[i];
        if (!(p.close > 0.0) || !std::isfinite(p.close)) {
            throw DataError(where + ": non-positive price at " + p.date.to_string());
        }
        if (i > 0) {
            if (series.points[i - 1].date == p.date) {
                throw DataError(where + ": duplicate date " + p.date.to_string());
            }
            if (series.points[i - 1].date > p.date) {
                throw DataError(where + ": dates out of order at " + p.date.to_string());
            }
        }
    }
}

// One listed option: quotes maps trading date to market premium (>= 0).
struct OptionContract {
    OptionKind kind = OptionKind::Call;
    double strike = 0.0;
    Date issue_date;
    Date expiry_date;
    std::map<Date, double> quotes;

    // Grouping key for chain files and deterministic ordering.
    auto key() const { return std::make_tuple(kind, strike, issue_date, expiry_date); }
};

inline void validate_contract(const OptionContract& c, const std::string& source = "") {
    const std::string where = source.empty() ? "contract" : source;
    const std::string tag = std::string(1, to_char(c.kind)) + "/" +
                            std::to_string(c.strike) + "/" + c.issue_date.to_string();
    if (!(c.strike > 0.0)) {
        throw DataError(where + ": non-positive strike (" + tag + ")");
    }
    if (!(c.issue_date < c.expiry_date)) {
        throw DataError(where + ": expiry not after issue (" + tag + ")");
    }
    for (const auto& [date, price] : c.quotes) {
        if (date < c.issue_date || date > c.expiry_date) {
            throw DataError(where + ": quote date " + date.to_string() +
                            " outside contract life (" + tag + ")");
        }
        if (price < 0.0 || !std::isfinite(price)) {
            throw DataError(where + ": negative market price on " + date.to_string() +
                            " (" + tag + ")");
        }
    }
}

enum class Moneyness { ITM, NTM, OTM };

inline std::string_view to_string(Moneyness m) {
    switch (m) {
        case Moneyness::ITM: return "ITM";
        case Moneyness::NTM: return "NTM";
        default: return "OTM";
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

inline double parse_number(std::string_view field, const std::string& source, long line) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw DataError(source, line, "malformed number '" + std::string(field) + "'");
    }
    return value;
}

inline Date parse_date(std::string_view field, const std::string& source, long line) {
    try {
        return Date::parse(field);
    } catch (const std::invalid_argument& e) {
        throw DataError(source, line, e.what());
    }
}

}  // namespace detail

// Reads `date,close` CSV (LF or CRLF). Rows are sorted by date regardless of
// file order; duplicate dates and non-positive closes are rejected.
inline PriceSeries load_index_series(std::istream& in, const std::string& label) {
    PriceSeries series;
    series.label = label;

    std::string line;
    long line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = detail::trim(line);
        if (text.empty()) continue;
        if (!saw_header) {
            if (text != "date,close") {
                throw DataError(label, line_no, "expected header 'date,close'");
            }
            saw_header = true;
            continue;
        }
        const auto fields = detail::split_csv(text);
        if (fields.size() != 2) {
            throw DataError(label, line_no, "malformed row: expected 2 fields, got " +
                                                std::to_string(fields.size()));
        }
        PricePoint point;
        point.date = detail::parse_date(fields[0], label, line_no);
        point.close = detail::parse_number(fields[1], label, line_no);
        if (!(point.close > 0.0)) {
            throw DataError(label, line_no, "non-positive price");
        }
        series.points.push_back(point);
    }
    if (!saw_header) {
        throw DataError(label + ": empty input (missing 'date,close' header)");
    }

    std::sort(series.points.begin(), series.points.end(),
              [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
    validate_price_series(series, label);
    return series;
}

// Reads `kind,strike,issue_date,expiry_date,quote_date,market_price` CSV.
// Rows sharing (kind, strike, issue, expiry) merge into one contract; the
// result is sorted by contract key so any row permutation loads identically.
inline std::vector<OptionContract> load_option_chain(std::istream& in,
                                                     const std::string& source = "chain") {
    std::map<std::tuple<OptionKind, double, Date, Date>, OptionContract> grouped;

    std::string line;
    long line_no = 0;
    bool saw_header = false;
    static constexpr std::string_view kHeader =
        "kind,strike,issue_date,expiry_date,quote_date,market_price";
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = detail::trim(line);
        if (text.empty()) continue;
        if (!saw_header) {
            if (text != kHeader) {
                throw DataError(source, line_no,
                                "expected header '" + std::string(kHeader) + "'");
            }
            saw_header = true;
            continue;
        }
        const auto fields = detail::split_csv(text);
        if (fields.size() != 6) {
            throw DataError(source, line_no, "malformed row: expected 6 fields, got " +
                                                 std::to_string(fields.size()));
        }

        OptionKind kind;
        try {
            kind = option_kind_from_token(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw DataError(source, line_no, e.what());
        }
        const double strike = detail::parse_number(fields[1], source, line_no);
        const Date issue = detail::parse_date(fields[2], source, line_no);
        const Date expiry = detail::parse_date(fields[3], source, line_no);
        const Date quote_date = detail::parse_date(fields[4], source, line_no);
        const double market_price = detail::parse_number(fields[5], source, line_no);

        if (!(strike > 0.0)) {
            throw DataError(source, line_no, "non-positive strike");
        }
        if (!(issue < expiry)) {
            throw DataError(source, line_no, "expiry not after issue");
        }
        if (quote_date < issue || quote_date > expiry) {
            throw DataError(source, line_no, "quote date outside contract life");
        }
        if (market_price < 0.0) {
            throw DataError(source, line_no, "negative market price");
        }

        auto& contract = grouped[std::make_tuple(kind, strike, issue, expiry)];
        contract.kind = kind;
        contract.strike = strike;
        contract.issue_date = issue;
        contract.expiry_date = expiry;
        const auto [it, inserted] = contract.quotes.emplace(quote_date, market_price);
        if (!inserted && it->second != market_price) {
            throw DataError(source, line_no,
                            "conflicting duplicate quote on " + quote_date.to_string());
        }
    }
    if (!saw_header) {
        throw DataError(source + ": empty input (missing header)");
    }

    std::vector<OptionContract> contracts;
    contracts.reserve(grouped.size());
    for (auto& [key, contract] : grouped) {
        validate_contract(contract, source);
        contracts.push_back(std::move(contract));
    }
    return contracts;
}

// The strike nearest the spot is NTM (ties go to the lower strike);
// otherwise calls below / puts above the spot are ITM and the rest OTM.
inline Moneyness classify_moneyness(const OptionContract& contract,
                                    std::span<const double> chain_strikes, double spot) {
    if (chain_strikes.empty()) {
        throw std::invalid_argument("classify_moneyness: empty strike chain");
    }
    if (!(spot > 0.0)) {
        throw std::invalid_argument("classify_moneyness: non-positive spot");
    }

    double ntm_strike = chain_strikes[0];
    bool found = chain_strikes[0] == contract.strike;
    for (const double k : chain_strikes) {
        if (k == contract.strike) found = true;
        const double d = std::abs(k - spot);
        const double best = std::abs(ntm_strike - spot);
        if (d < best || (d == best && k < ntm_strike)) {
            ntm_strike = k;
        }
    }
    if (!found) {
        throw std::invalid_argument("classify_moneyness: contract strike not in chain");
    }

    if (contract.strike == ntm_strike) return Moneyness::NTM;
    const bool itm = contract.kind == OptionKind::Call ? contract.strike < spot
                                                       : contract.strike > spot;
    return itm ? Moneyness::ITM : Moneyness::OTM;
}

}  // namespace mamc
