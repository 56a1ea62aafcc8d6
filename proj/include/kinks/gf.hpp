#pragma once

/**
 * @file gf.hpp
 * @brief Generating functions and closed forms for #F_n^d.
 *
 * G(t, v) = sum_{j>=0} 4 t^2 s (1 - (1+2j) s t - t(1-v)) v^j
 *                      / ((1+s)^(1+2j) (1 - 2j t s)^2 (1 - 2(j+1) t s)^2),   s = sqrt(1-v)
 *
 * expanded exactly in Q[v]/(v^(D+1))[[t]]/(t^(N+1)).  Because of the v^j
 * factor only j = 0..D contribute at truncation D.
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinks/algebra.hpp"
#include "kinks/core.hpp"
#include "kinks/treedp.hpp"

namespace kinks {

namespace detail {

inline BigInt to_count(const Rat& x, unsigned n, unsigned d, const char* who) {
    if (denominator(x) != 1 || x < 0)
        throw std::logic_error(std::string(who) + ": coefficient of t^" + std::to_string(n) + " v^" +
                               std::to_string(d) + " is not a nonnegative integer");
    return numerator(x);
}

inline Rat pow2(int e) {
    Rat r = 1;
    if (e >= 0) {
        r = Rat(BigInt(1) << e);
    } else {
        r = Rat(BigInt(1), BigInt(1) << -e);
    }
    return r;
}

inline TSeries g_term(unsigned j, unsigned t_order, unsigned v_order, const TruncPoly& s) {
    const TruncPoly one = TruncPoly::one(v_order);
    const TruncPoly vj = TruncPoly::monomial(v_order, j);
    const TruncPoly one_minus_v = one - TruncPoly::monomial(v_order, 1);

    // 4 s v^j t^2 (1 - ((1+2j) s + (1-v)) t)
    const TruncPoly lead = 4 * s * vj;
    const TruncPoly slope = -(lead * (Rat(1 + 2 * j) * s + one_minus_v));
    const TSeries numer = TSeries::from_coeffs(t_order, v_order, {TruncPoly(v_order), TruncPoly(v_order), lead, slope});

    const TSeries a = TSeries::from_coeffs(t_order, v_order, {one, Rat(-2 * static_cast<int>(j)) * s});
    const TSeries b = TSeries::from_coeffs(t_order, v_order, {one, Rat(-2 * static_cast<int>(j + 1)) * s});
    const TSeries denom = (a * a * b * b) * poly_pow(one + s, 1 + 2 * j);
    return numer * tseries_inverse(denom);
}

}  // namespace detail

/// G(t, v) truncated at t^N and v^D.
inline TSeries expand_G_series(unsigned t_order, unsigned v_order) {
    if (t_order < 2) throw std::invalid_argument("expand_G: t-order must be >= 2");
    const TruncPoly s = sqrt_one_minus_v(v_order);
    TSeries g(t_order, v_order);
    for (unsigned j = 0; j <= v_order; ++j) g += detail::g_term(j, t_order, v_order, s);
    if (!(detail::g_term(v_order + 1, t_order, v_order, s) == TSeries(t_order, v_order)))
        throw std::logic_error("expand_G: term j = D+1 survives truncation");
    return g;
}

/**
 * Rows 2..N of the count table read off G(t, v).  Row n holds d = 0..min(D, max_kinks(n)),
 * so it is complete only when D >= max_kinks(n).
 */
inline CountTable expand_G(unsigned t_order, unsigned v_order) {
    const TSeries g = expand_G_series(t_order, v_order);
    CountTable table;
    for (unsigned n = 2; n <= t_order; ++n) {
        CountTable::Row row;
        for (unsigned d = 0; d <= v_order; ++d) {
            const Rat& c = g[n][d];
            if (d > max_kinks(n)) {
                if (c != 0) throw std::logic_error("expand_G: nonzero coefficient above max_kinks at t^" + std::to_string(n));
                continue;
            }
            row.push_back(detail::to_count(c, n, d, "expand_G"));
        }
        table.set_row(n, std::move(row));
    }
    return table;
}

/// Coefficients of t^2..t^N of the rational generating function h^d(t), d = 0..3.
inline std::vector<BigInt> expand_hd(unsigned d, unsigned t_order) {
    if (d > 3) throw std::invalid_argument("expand_hd: only d = 0..3 have closed generating functions");
    if (t_order < 2) throw std::invalid_argument("expand_hd: t-order must be >= 2");

    auto poly = [t_order](std::vector<Rat> coeffs) {
        std::vector<TruncPoly> c;
        for (auto& x : coeffs) c.push_back(TruncPoly::constant(0, x));
        return TSeries::from_coeffs(t_order, 0, c);
    };
    auto linear = [&](int a) { return poly({1, -a}); };  // 1 - a t
    auto t_pow = [&](unsigned e) { return TSeries::monomial(t_order, e, TruncPoly::one(0)); };

    TSeries numer(t_order, 0);
    TSeries denom(t_order, 0);
    switch (d) {
        case 0:
            numer = t_pow(2) * TruncPoly::constant(0, 2);
            denom = linear(2);
            break;
        case 1:
            numer = t_pow(3) * TruncPoly::constant(0, 2);
            denom = tseries_pow(linear(2), 2) * linear(4);
            break;
        case 2:
            numer = t_pow(5) * poly({16, -48});
            denom = tseries_pow(linear(2), 3) * tseries_pow(linear(4), 2) * linear(6);
            break;
        default:
            numer = t_pow(7) * poly({16 * 17, -16 * 184, 16 * 636, -16 * 720});
            denom = tseries_pow(linear(2), 4) * tseries_pow(linear(4), 3) * tseries_pow(linear(6), 2) * linear(8);
            break;
    }
    const TSeries h = numer * tseries_inverse(denom);
    std::vector<BigInt> out;
    for (unsigned n = 2; n <= t_order; ++n) out.push_back(detail::to_count(h[n][0], n, d, "expand_hd"));
    return out;
}

/**
 * Explicit #F_n^d for d <= 3.  Zero when n < 2d+1.
 *
 * d = 3:  8^n/128 - 6^n (n-2)/64 + 4^n (n^2-4n+2)/64 - 2^n (2n^3 - 12n^2 + 13n + 6)/192
 */
inline BigInt closed_form(unsigned n, unsigned d) {
    if (d > 3) throw std::invalid_argument("closed_form: only d = 0..3 have closed forms");
    if (n < 1) throw std::invalid_argument("closed_form: n must be >= 1");
    if (n < 2 * d + 1) return 0;
    const BigInt N = n;
    auto p = [n](unsigned base) { return Rat(boost::multiprecision::pow(BigInt(base), n)); };
    Rat x;
    switch (d) {
        case 0:
            x = p(2) / 2;
            break;
        case 1:
            x = p(2) / 4 * (p(2) / 2 - Rat(N));
            break;
        case 2:
            x = p(6) / 32 - p(4) * Rat(N - 1) / 16 + p(2) * Rat(2 * N * N - 4 * N - 1) / 32;
            break;
        default:
            x = p(8) / 128 - p(6) * Rat(N - 2) / 64 + p(4) * Rat(N * N - 4 * N + 2) / 64 -
                p(2) * Rat(2 * N * N * N - 12 * N * N + 13 * N + 6) / 192;
            break;
    }
    return detail::to_count(x, n, d, "closed_form");
}

/// 2^(n-2d-1) (d+1)^n, exactly.
inline Rat asymptotic_estimate(unsigned n, unsigned d) {
    return detail::pow2(static_cast<int>(n) - 2 * static_cast<int>(d) - 1) *
           Rat(boost::multiprecision::pow(BigInt(d + 1), n));
}

struct ConvergenceRow {
    unsigned n;
    BigInt exact;
    Rat estimate;
    Rat deviation;  // |exact / estimate - 1|
};

struct ConvergenceReport {
    unsigned d = 0;
    unsigned n_max = 0;
    std::vector<ConvergenceRow> rows;
    /// Deviation strictly decreases (or stays at zero) for n >= 4d+4.
    bool monotone = true;
    std::optional<unsigned> first_non_decrease;  // n where the window check first fails
    std::optional<Rat> threshold;
    bool below_threshold = true;

    bool ok() const { return monotone && below_threshold; }
};

/// Relative deviation of #F_n^d from its asymptotic estimate for max(1, 2d+1) <= n <= n_max.
inline ConvergenceReport convergence_report(unsigned d, unsigned n_max, std::optional<Rat> threshold = {},
                                            const CountTable* exact = nullptr) {
    const unsigned n_min = std::max(1u, 2 * d + 1);
    if (n_max < n_min)
        throw std::invalid_argument("convergence_report: n_max must be >= " + std::to_string(n_min));
    CountTable local;
    if (exact == nullptr || !exact->has_row(n_max)) {
        local = dp_table(n_max);
        exact = &local;
    }
    ConvergenceReport rep;
    rep.d = d;
    rep.n_max = n_max;
    rep.threshold = threshold;
    for (unsigned n = n_min; n <= n_max; ++n) {
        ConvergenceRow row{n, exact->at(n, d), asymptotic_estimate(n, d), 0};
        row.deviation = abs(Rat(row.exact) / row.estimate - 1);
        rep.rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        const auto& prev = rep.rows[i - 1];
        const auto& cur = rep.rows[i];
        if (prev.n < 4 * d + 4) continue;
        const bool ok = cur.deviation < prev.deviation || (cur.deviation == 0 && prev.deviation == 0);
        if (!ok) {
            rep.monotone = false;
            rep.first_non_decrease = cur.n;
            break;
        }
    }
    if (threshold) rep.below_threshold = rep.rows.back().deviation < *threshold;
    return rep;
}

}  // namespace kinks
