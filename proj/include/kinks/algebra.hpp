#pragma once

/**
 * @file algebra.hpp
 * @brief Exact truncated series in two variables.
 *
 * TruncPoly is an element of Q[v]/(v^(D+1)); TSeries is a power series in t
 * truncated after t^N whose coefficients are TruncPolys of a common order D.
 * Everything is exact rational arithmetic.  The square root of (1 - v) lives
 * in TruncPoly as its truncated Taylor series, so 1 + sqrt(1 - v) is a unit.
 */

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kinks {

using Rat = boost::multiprecision::cpp_rational;

class TruncPoly {
public:
    /// Zero polynomial of order D.
    explicit TruncPoly(unsigned order) : c_(std::size_t{order} + 1, Rat(0)) {}

    /// Leading coefficients from `coeffs`; extra terms beyond `order` are dropped.
    TruncPoly(unsigned order, std::initializer_list<Rat> coeffs) : TruncPoly(order) {
        std::size_t i = 0;
        for (const auto& x : coeffs) {
            if (i > order) break;
            c_[i++] = x;
        }
    }

    static TruncPoly constant(unsigned order, const Rat& x) {
        TruncPoly p(order);
        p.c_[0] = x;
        return p;
    }

    static TruncPoly one(unsigned order) { return constant(order, 1); }

    /// v^j, zero when j exceeds the order.
    static TruncPoly monomial(unsigned order, unsigned j, const Rat& x = 1) {
        TruncPoly p(order);
        if (j <= order) p.c_[j] = x;
        return p;
    }

    unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }
    const Rat& operator[](std::size_t i) const { return c_.at(i); }
    Rat& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_unit() const { return c_[0] != 0; }

    /// Same polynomial at a lower order.
    TruncPoly truncate(unsigned order) const {
        if (order > this->order()) throw std::invalid_argument("TruncPoly::truncate: cannot raise order");
        TruncPoly p(order);
        for (unsigned i = 0; i <= order; ++i) p.c_[i] = c_[i];
        return p;
    }

    TruncPoly& operator+=(const TruncPoly& o) {
        same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TruncPoly& operator-=(const TruncPoly& o) {
        same_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TruncPoly& operator*=(const Rat& x) {
        for (auto& c : c_) c *= x;
        return *this;
    }
    TruncPoly& operator*=(const TruncPoly& o) { return *this = *this * o; }

    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator-(TruncPoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend TruncPoly operator*(TruncPoly a, const Rat& x) { return a *= x; }
    friend TruncPoly operator*(const Rat& x, TruncPoly a) { return a *= x; }

    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        a.same_order(b);
        const std::size_t len = a.c_.size();
        TruncPoly out(a.order());
        for (std::size_t i = 0; i < len; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < len; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    bool operator==(const TruncPoly&) const = default;

private:
    void same_order(const TruncPoly& o) const {
        if (o.c_.size() != c_.size())
            throw std::invalid_argument("TruncPoly: mismatched orders " + std::to_string(order()) + " and " +
                                        std::to_string(o.order()));
    }

    std::vector<Rat> c_;
};

inline TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b) { return a * b; }

/// Multiplicative inverse mod v^(D+1); the constant term must be nonzero.
inline TruncPoly poly_inverse(const TruncPoly& a) {
    if (!a.is_unit()) throw std::domain_error("poly_inverse: constant term is zero");
    const unsigned order = a.order();
    TruncPoly b(order);
    const Rat inv0 = 1 / a[0];
    b[0] = inv0;
    for (unsigned k = 1; k <= order; ++k) {
        Rat acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc += a[i] * b[k - i];
        b[k] = -acc * inv0;
    }
    return b;
}

inline TruncPoly poly_pow(TruncPoly base, unsigned e) {
    TruncPoly result = TruncPoly::one(base.order());
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

/// Principal square root of 1 - v: sum_k binom(1/2, k) (-v)^k.
inline TruncPoly sqrt_one_minus_v(unsigned order) {
    TruncPoly s(order);
    Rat c = 1;
    s[0] = c;
    for (unsigned k = 1; k <= order; ++k) {
        c *= (Rat(1, 2) - (k - 1)) / k;
        c = -c;
        s[k] = c;
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const TruncPoly& p) {
    os << '[';
    for (unsigned i = 0; i <= p.order(); ++i) os << (i ? ", " : "") << p[i];
    return os << ']';
}

class TSeries {
public:
    TSeries(unsigned t_order, unsigned v_order) : v_order_(v_order), c_(std::size_t{t_order} + 1, TruncPoly(v_order)) {}

    /// x * t^m.
    static TSeries monomial(unsigned t_order, unsigned m, const TruncPoly& x) {
        TSeries s(t_order, x.order());
        if (m <= t_order) s.c_[m] = x;
        return s;
    }

    static TSeries one(unsigned t_order, unsigned v_order) {
        return monomial(t_order, 0, TruncPoly::one(v_order));
    }

    /// Polynomial in t with the given coefficients, truncated at t_order.
    static TSeries from_coeffs(unsigned t_order, unsigned v_order, const std::vector<TruncPoly>& coeffs) {
        TSeries s(t_order, v_order);
        for (std::size_t i = 0; i < coeffs.size() && i <= t_order; ++i) {
            if (coeffs[i].order() != v_order) throw std::invalid_argument("TSeries: coefficient order mismatch");
            s.c_[i] = coeffs[i];
        }
        return s;
    }

    unsigned t_order() const { return static_cast<unsigned>(c_.size() - 1); }
    unsigned v_order() const { return v_order_; }
    const TruncPoly& operator[](std::size_t m) const { return c_.at(m); }
    TruncPoly& operator[](std::size_t m) { return c_.at(m); }

    bool is_unit() const { return c_[0].is_unit(); }

    TSeries& operator+=(const TSeries& o) {
        same_shape(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TSeries& operator-=(const TSeries& o) {
        same_shape(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TSeries& operator*=(const TruncPoly& x) {
        for (auto& c : c_) c *= x;
        return *this;
    }
    TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
    friend TSeries operator*(TSeries a, const TruncPoly& x) { return a *= x; }

    friend TSeries operator*(const TSeries& a, const TSeries& b) {
        a.same_shape(b);
        const std::size_t len = a.c_.size();
        TSeries out(a.t_order(), a.v_order_);
        for (std::size_t i = 0; i < len; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < len; ++j) {
                if (b.c_[j].is_zero()) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }

    bool operator==(const TSeries&) const = default;

private:
    void same_shape(const TSeries& o) const {
        if (o.c_.size() != c_.size() || o.v_order_ != v_order_)
            throw std::invalid_argument("TSeries: mismatched truncation orders");
    }

    unsigned v_order_;
    std::vector<TruncPoly> c_;
};

inline TSeries tseries_mul(const TSeries& a, const TSeries& b) { return a * b; }

/// Multiplicative inverse mod t^(N+1); the t^0 coefficient must be a unit TruncPoly.
inline TSeries tseries_inverse(const TSeries& a) {
    if (!a.is_unit()) throw std::domain_error("tseries_inverse: t^0 coefficient is not a unit");
    const unsigned n = a.t_order();
    TSeries b(n, a.v_order());
    const TruncPoly inv0 = poly_inverse(a[0]);
    b[0] = inv0;
    for (unsigned m = 1; m <= n; ++m) {
        TruncPoly acc(a.v_order());
        for (unsigned i = 1; i <= m; ++i)
            if (!a[i].is_zero()) acc += a[i] * b[m - i];
        b[m] = -(acc * inv0);
    }
    return b;
}

inline TSeries tseries_pow(TSeries base, unsigned e) {
    TSeries result = TSeries::one(base.t_order(), base.v_order());
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

}  // namespace kinks
