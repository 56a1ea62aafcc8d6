#pragma once

// Cross-checks every counting route against the others and against the
// published h_2 .. h_10 table.  Used by `kinks verify`.

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kinks/core.hpp"
#include "kinks/gf.hpp"
#include "kinks/oracle.hpp"
#include "kinks/treedp.hpp"

namespace kinks {

/// h_2(v) .. h_10(v).
inline CountTable golden_table() {
    CountTable t;
    t.set_row(2, {2});
    t.set_row(3, {4, 2});
    t.set_row(4, {8, 16});
    t.set_row(5, {16, 88, 16});
    t.set_row(6, {32, 416, 272});
    t.set_row(7, {64, 1824, 2880, 272});
    t.set_row(8, {128, 7680, 24576, 7936});
    t.set_row(9, {256, 31616, 185856, 137216, 7936});
    t.set_row(10, {512, 128512, 1304832, 1841152, 353792});
    return t;
}

struct VerifyOptions {
    unsigned max_n_brute = 9;
    unsigned max_n_dp = 60;
    unsigned t_order = 20;
    unsigned v_order = 6;
    unsigned brute_ceiling = kDefaultBruteCeiling;
    CountTable golden = golden_table();
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;  // first counterexample on failure
};

struct VerifyResult {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

/// Upper bound used for the convergence check: 4 n (d/(d+1))^n, twice the leading correction.
inline Rat convergence_bound(unsigned d, unsigned n) {
    return Rat(4 * n) * Rat(boost::multiprecision::pow(BigInt(d), n), boost::multiprecision::pow(BigInt(d + 1), n));
}

namespace detail {

// Returns "" if every entry of `got` within the rows/columns of `want` agrees.
inline std::string compare_tables(const CountTable& want, const CountTable& got, unsigned n_max, unsigned d_max,
                                  const std::string& want_name, const std::string& got_name) {
    for (const auto& [n, row] : want.rows()) {
        if (n > n_max) continue;
        if (!got.has_row(n)) return got_name + " has no row " + std::to_string(n);
        const auto& other = got.row(n);
        for (std::size_t d = 0; d < row.size() && d <= d_max; ++d) {
            if (d >= other.size()) return got_name + " row " + std::to_string(n) + " is missing d=" + std::to_string(d);
            if (row[d] != other[d]) {
                std::ostringstream os;
                os << "n=" << n << " d=" << d << ": " << want_name << " " << row[d] << " vs " << got_name << " "
                   << other[d];
                return os.str();
            }
        }
    }
    return {};
}

inline std::string partition_check(const CountTable& t, const std::string& name) {
    for (const auto& [n, row] : t.rows()) {
        if (!t.row_complete(n)) continue;
        if (t.row_sum(n) != factorial(n))
            return name + " row " + std::to_string(n) + " sums to " + t.row_sum(n).str() + ", expected n!";
    }
    return {};
}

}  // namespace detail

inline VerifyResult run_verify(const VerifyOptions& opt) {
    VerifyResult result;
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult c{name, true, {}};
        try {
            c.detail = body();
        } catch (const std::exception& e) {
            c.detail = std::string("exception: ") + e.what();
        }
        c.passed = c.detail.empty();
        result.checks.push_back(std::move(c));
    };

    const unsigned dp_n = std::max(10u, opt.max_n_dp);
    const unsigned brute_n = std::max(1u, opt.max_n_brute);
    const CountTable dp = dp_table(dp_n);
    std::optional<CountTable> brute;
    std::optional<CountTable> gf;
    const unsigned all = ~0u;

    check("golden.dp", [&] { return detail::compare_tables(opt.golden, dp, all, all, "golden", "dp"); });
    check("golden.brute", [&] {
        brute = brute_force_table(brute_n, opt.brute_ceiling);
        return detail::compare_tables(opt.golden, *brute, brute_n, all, "golden", "brute");
    });
    check("golden.gf", [&] {
        gf = expand_G(std::max(2u, opt.t_order), opt.v_order);
        return detail::compare_tables(opt.golden, *gf, opt.t_order, opt.v_order, "golden", "gf");
    });
    check("agree.brute_dp", [&] {
        if (!brute) return std::string("brute table unavailable");
        return detail::compare_tables(*brute, dp, all, all, "brute", "dp");
    });
    check("agree.backtrack_dp", [&] {
        for (unsigned n = 1; n <= std::min(brute_n, kBacktrackCountLimit); ++n)
            for (unsigned d = 0; d <= max_kinks(n); ++d)
                if (backtrack_count(n, d) != dp.at(n, d))
                    return "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": backtrack " +
                           backtrack_count(n, d).str() + " vs dp " + dp.at(n, d).str();
        return std::string();
    });
    check("agree.gf_dp", [&] {
        if (!gf) return std::string("gf table unavailable");
        return detail::compare_tables(*gf, dp, all, all, "gf", "dp");
    });
    check("partition.dp", [&] { return detail::partition_check(dp, "dp"); });
    check("partition.brute", [&] { return brute ? detail::partition_check(*brute, "brute") : "brute table unavailable"; });
    check("partition.gf", [&] { return gf ? detail::partition_check(*gf, "gf") : "gf table unavailable"; });
    check("tree.labels", [&] {
        const auto rep = tree_label_consistency(std::min(8u, std::max(2u, brute_n)));
        if (rep.ok()) return std::string();
        const auto& m = rep.mismatches.front();
        std::ostringstream os;
        os << "parent " << m.parent << " insert at " << m.insert_position << ": rule " << m.predicted << " vs word "
           << m.actual;
        return os.str();
    });
    check("tree.level_totals", [&] {
        LevelState level = LevelState::roots();
        for (unsigned n = 2; n <= dp_n; ++n) {
            if (n > 2) level = advance_level(level);
            if (level.total() != factorial(n)) return "level " + std::to_string(n) + " total differs from n!";
        }
        return std::string();
    });
    check("integrality.hd", [&] {
        const unsigned t = std::max(2u, std::min(opt.t_order, dp_n));
        for (unsigned d = 0; d <= 3; ++d) {
            const auto series = expand_hd(d, t);
            for (unsigned n = 2; n <= t; ++n)
                if (series[n - 2] != dp.at(n, d))
                    return "h^" + std::to_string(d) + " t^" + std::to_string(n) + ": " + series[n - 2].str() + " vs dp " +
                           dp.at(n, d).str();
        }
        return std::string();
    });
    check("closed_form", [&] {
        for (unsigned d = 0; d <= 3; ++d)
            for (unsigned n = 2 * d + 1; n <= dp_n; ++n)
                if (closed_form(n, d) != dp.at(n, d))
                    return "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": closed " + closed_form(n, d).str() +
                           " vs dp " + dp.at(n, d).str();
        return std::string();
    });
    for (unsigned d = 0; d <= 3; ++d) {
        check("convergence.d" + std::to_string(d), [&, d] {
            if (dp_n < 2 * d + 1) return std::string();
            std::optional<Rat> bound;
            if (d > 0) bound = convergence_bound(d, dp_n);
            const auto rep = convergence_report(d, dp_n, bound, &dp);
            if (!rep.monotone) return "deviation not decreasing at n=" + std::to_string(*rep.first_non_decrease);
            if (!rep.below_threshold) return "deviation at n=" + std::to_string(dp_n) + " above 4n(d/(d+1))^n";
            for (const auto& r : rep.rows) {
                if (d == 0 && r.deviation != 0) return "d=0 deviation nonzero at n=" + std::to_string(r.n);
                if (d == 1 && r.deviation != Rat(2 * r.n) / Rat(BigInt(1) << r.n))
                    return "d=1 deviation differs from 2n/2^n at n=" + std::to_string(r.n);
            }
            return std::string();
        });
    }
    return result;
}

inline void print_verify(std::ostream& os, const VerifyResult& r) {
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed) os << ": " << c.detail;
        os << '\n';
        if (c.passed) ++passed;
    }
    os << passed << '/' << r.checks.size() << " checks passed\n";
    os << (r.ok() ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
}

}  // namespace kinks
