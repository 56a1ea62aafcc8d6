#pragma once

// Serialisation of count tables and convergence reports.
//
// CSV:  header "n,d,count", one line per entry, LF endings.
// JSON: {"rows": [{"n": 2, "counts": ["2"]}, ...]} with counts as decimal strings.
// Text: one "h_n(v) = ..." line per row.

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "kinks/algebra.hpp"
#include "kinks/core.hpp"
#include "kinks/gf.hpp"

namespace kinks {

/// Decimal rendering of an exact rational with `digits` significant digits, printf "%g" style.
inline std::string to_decimal(const Rat& value, int digits = 6) {
    if (value == 0) return "0";
    std::string sign = value < 0 ? "-" : "";
    const Rat x = abs(value);
    const BigInt num = numerator(x);
    const BigInt den = denominator(x);

    // exponent e with 10^e <= x < 10^(e+1)
    int e = static_cast<int>(num.str().size()) - static_cast<int>(den.str().size());
    auto ten = [](int k) -> BigInt { return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(k)); };
    auto at_least_pow10 = [&](int k) {
        return k >= 0 ? num >= den * ten(k) : num * ten(-k) >= den;
    };
    while (!at_least_pow10(e)) --e;
    while (at_least_pow10(e + 1)) ++e;

    // mantissa = round(x * 10^(digits-1-e)), half away from zero
    const int shift = digits - 1 - e;
    BigInt scaled_num = shift >= 0 ? num * ten(shift) : num;
    BigInt scaled_den = shift >= 0 ? den : den * ten(-shift);
    BigInt mant = (2 * scaled_num + scaled_den) / (2 * scaled_den);
    if (mant >= ten(digits)) {
        mant /= 10;
        ++e;
    }
    std::string m = mant.str();

    std::string out;
    if (e < -4 || e >= digits) {
        std::string frac = m.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = m.substr(0, 1) + (frac.empty() ? "" : "." + frac);
        const int ae = e < 0 ? -e : e;
        out += std::string("e") + (e < 0 ? "-" : "+") + (ae < 10 ? "0" : "") + std::to_string(ae);
    } else if (e >= 0) {
        std::string ip = m.substr(0, static_cast<std::size_t>(e) + 1);
        std::string frac = m.substr(static_cast<std::size_t>(e) + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = ip + (frac.empty() ? "" : "." + frac);
    } else {
        std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + m;
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = "0." + frac;
    }
    return sign + out;
}

inline std::string rat_str(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline void write_csv(std::ostream& os, const CountTable& table) {
    os << "n,d,count\n";
    for (const auto& [n, row] : table.rows())
        for (std::size_t d = 0; d < row.size(); ++d) os << n << ',' << d << ',' << row[d].str() << '\n';
}

inline nlohmann::json to_json(const CountTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [n, row] : table.rows()) {
        nlohmann::json counts = nlohmann::json::array();
        for (const auto& c : row) counts.push_back(c.str());
        rows.push_back({{"n", n}, {"counts", counts}});
    }
    return {{"rows", rows}};
}

inline void write_json(std::ostream& os, const CountTable& table) { os << to_json(table).dump(2) << '\n'; }

/// "h_10(v) = 512 + 128512v + 1304832v^2 + ..."
inline void write_text(std::ostream& os, const CountTable& table) {
    for (const auto& [n, row] : table.rows()) {
        os << "h_" << n << "(v) = ";
        for (std::size_t d = 0; d < row.size(); ++d) {
            if (d > 0) os << " + ";
            os << row[d].str();
            if (d == 1) os << 'v';
            if (d > 1) os << "v^" << d;
        }
        os << '\n';
    }
}

namespace detail {

inline BigInt parse_count(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("count is not a nonnegative decimal integer: '" + s + "'");
    return BigInt(s);
}

inline unsigned parse_index(const std::string& s) {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad index: '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

}  // namespace detail

inline CountTable table_from_json(const nlohmann::json& j) {
    CountTable table;
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw std::invalid_argument("table JSON: expected an object with a 'rows' array");
    for (const auto& r : j["rows"]) {
        const auto n = r.at("n").get<unsigned>();
        CountTable::Row row;
        for (const auto& c : r.at("counts")) row.push_back(detail::parse_count(c.get<std::string>()));
        table.set_row(n, std::move(row));
    }
    return table;
}

inline CountTable read_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("table JSON: ") + e.what());
    }
    return table_from_json(j);
}

inline CountTable read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,d,count") throw std::invalid_argument("table CSV: missing header");
    std::map<unsigned, CountTable::Row> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw std::invalid_argument("table CSV: bad line '" + line + "'");
        const unsigned n = detail::parse_index(line.substr(0, c1));
        const unsigned d = detail::parse_index(line.substr(c1 + 1, c2 - c1 - 1));
        auto& row = rows[n];
        if (d != row.size()) throw std::invalid_argument("table CSV: d values must be consecutive from 0");
        row.push_back(detail::parse_count(line.substr(c2 + 1)));
    }
    CountTable table;
    for (auto& [n, row] : rows) table.set_row(n, std::move(row));
    return table;
}

inline void write_report_csv(std::ostream& os, const ConvergenceReport& rep) {
    os << "n,exact,estimate,deviation\n";
    for (const auto& r : rep.rows)
        os << r.n << ',' << r.exact.str() << ',' << rat_str(r.estimate) << ',' << to_decimal(r.deviation) << '\n';
}

inline void write_report_json(std::ostream& os, const ConvergenceReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"n", r.n},
                        {"exact", r.exact.str()},
                        {"estimate", rat_str(r.estimate)},
                        {"deviation", to_decimal(r.deviation)},
                        {"deviation_exact", rat_str(r.deviation)}});
    nlohmann::json j = {{"d", rep.d}, {"rows", rows}};
    os << j.dump(2) << '\n';
}

inline void write_report_text(std::ostream& os, const ConvergenceReport& rep) {
    os << "d = " << rep.d << "\n";
    os << "n\texact\testimate\tdeviation\n";
    for (const auto& r : rep.rows)
        os << r.n << '\t' << r.exact.str() << '\t' << rat_str(r.estimate) << '\t' << to_decimal(r.deviation) << '\n';
}

}  // namespace kinks
