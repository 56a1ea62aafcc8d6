#pragma once

/**
 * @file core.hpp
 * @brief Histories of an Ising chain and the kink statistic.
 *
 * A history of a chain with n sites is a permutation of {1..n} read as a
 * flip schedule: at time step i the site word[i-1] goes from - to +.  The
 * first flip creates the initial kink.  Every later flip whose site has no
 * already-flipped neighbour opens a new +-block; the number of such flips is
 * the kink statistic d, and the energy of the history is 4U(d+1).
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kinks {

using BigInt = boost::multiprecision::cpp_int;

/// Largest d with #F_n^d > 0, i.e. floor((n-1)/2).
constexpr unsigned max_kinks(unsigned n) {
    if (n == 0) throw std::invalid_argument("max_kinks: chain length must be positive");
    return (n - 1) / 2;
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

/// A flip schedule over sites 1..n.  Immutable value; equality is word equality.
class History {
public:
    explicit History(std::vector<unsigned> word) : word_(std::move(word)) {
        if (word_.empty()) throw std::invalid_argument("History: empty word");
        std::vector<bool> seen(word_.size() + 1, false);
        for (unsigned s : word_) {
            if (s < 1 || s > word_.size() || seen[s])
                throw std::invalid_argument("History: word is not a permutation of 1..n");
            seen[s] = true;
        }
    }

    History(std::initializer_list<unsigned> word) : History(std::vector<unsigned>(word)) {}

    /// Parses "1324" (n <= 9) or "1,3,2,4".
    static History parse(const std::string& text) {
        std::vector<unsigned> w;
        if (text.find(',') != std::string::npos) {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t next = text.find(',', pos);
                if (next == std::string::npos) next = text.size();
                w.push_back(static_cast<unsigned>(std::stoul(text.substr(pos, next - pos))));
                pos = next + 1;
            }
        } else {
            for (char c : text) {
                if (c < '1' || c > '9') throw std::invalid_argument("History::parse: bad digit");
                w.push_back(static_cast<unsigned>(c - '0'));
            }
        }
        return History(std::move(w));
    }

    std::size_t size() const { return word_.size(); }
    const std::vector<unsigned>& word() const { return word_; }

    /// Site flipped at 1-based time step i.
    unsigned at(std::size_t i) const { return word_.at(i - 1); }

    /// 1-based time step at which `site` is flipped.
    std::size_t position_of(unsigned site) const {
        auto it = std::find(word_.begin(), word_.end(), site);
        if (it == word_.end()) throw std::out_of_range("History: site not in chain");
        return static_cast<std::size_t>(it - word_.begin()) + 1;
    }

    /// Concatenated digits for n <= 9, comma separated otherwise.
    std::string str() const {
        std::string out;
        const bool compact = word_.size() <= 9;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (!compact && i > 0) out += ',';
            out += std::to_string(word_[i]);
        }
        return out;
    }

    bool operator==(const History&) const = default;
    auto operator<=>(const History&) const = default;

private:
    std::vector<unsigned> word_;
};

inline std::ostream& operator<<(std::ostream& os, const History& h) { return os << h.str(); }

/// Number of flips after the first whose site has no previously flipped neighbour.
inline unsigned kink_count(const History& h) {
    const auto& w = h.word();
    std::vector<char> flipped(w.size() + 2, 0);
    unsigned d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const unsigned s = w[i];
        if (i > 0 && !flipped[s - 1] && !flipped[s + 1]) ++d;
        flipped[s] = 1;
    }
    return d;
}

/// Generating-tree label (j, k, r) of a word.
struct KinkLabel {
    unsigned j = 1;  ///< position of the maximum letter
    unsigned k = 0;  ///< kink statistic
    unsigned r = 0;  ///< 1 iff the maximum precedes the second largest letter

    bool operator==(const KinkLabel&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const KinkLabel& l) {
    return os << '(' << l.j << ',' << l.k << ',' << l.r << ')';
}

inline KinkLabel vec_label(const History& h) {
    const auto n = static_cast<unsigned>(h.size());
    if (n < 2) throw std::invalid_argument("vec_label: needs n >= 2");
    const auto pos_max = h.position_of(n);
    const auto pos_next = h.position_of(n - 1);
    return KinkLabel{static_cast<unsigned>(pos_max), kink_count(h), pos_max < pos_next ? 1u : 0u};
}

struct EnergyParams {
    double coupling = 1.0;  // U

    explicit EnergyParams(double u) : coupling(u) {
        if (!(u > 0.0)) throw std::invalid_argument("EnergyParams: coupling must be positive");
    }
};

/// Energy 4U(d+1) of a history with d extra kinks.
inline double energy(unsigned d, const EnergyParams& p) { return 4.0 * p.coupling * (d + 1.0); }

/**
 * Exact counts #F_n^d.  Row n is the coefficient list of h_n(v).
 *
 * A row is complete when it holds every d = 0..max_kinks(n); some producers
 * (a truncated series expansion, for instance) may store a shorter prefix.
 */
class CountTable {
public:
    using Row = std::vector<BigInt>;

    CountTable() = default;

    void set_row(unsigned n, Row row) {
        if (n == 0) throw std::invalid_argument("CountTable: n must be positive");
        if (row.empty() || row.size() > max_kinks(n) + 1)
            throw std::invalid_argument("CountTable: row " + std::to_string(n) + " has bad length");
        for (const auto& c : row)
            if (c < 0) throw std::invalid_argument("CountTable: negative count");
        rows_[n] = std::move(row);
    }

    bool has_row(unsigned n) const { return rows_.count(n) != 0; }
    const Row& row(unsigned n) const {
        auto it = rows_.find(n);
        if (it == rows_.end()) throw std::out_of_range("CountTable: no row " + std::to_string(n));
        return it->second;
    }
    bool row_complete(unsigned n) const { return has_row(n) && row(n).size() == max_kinks(n) + 1; }

    /// #F_n^d; zero beyond max_kinks(n), throws when d lies inside the range but was not stored.
    BigInt at(unsigned n, unsigned d) const {
        const auto& r = row(n);
        if (d < r.size()) return r[d];
        if (d > max_kinks(n)) return 0;
        throw std::out_of_range("CountTable: entry not stored");
    }

    BigInt row_sum(unsigned n) const {
        const auto& r = row(n);
        return std::accumulate(r.begin(), r.end(), BigInt(0));
    }

    std::vector<unsigned> lengths() const {
        std::vector<unsigned> ns;
        for (const auto& [n, _] : rows_) ns.push_back(n);
        return ns;
    }

    const std::map<unsigned, Row>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

    /// First violated invariant (row sum n!, positive top entry) among complete rows, or "".
    std::string check_invariants() const {
        for (const auto& [n, r] : rows_) {
            if (r.size() != max_kinks(n) + 1) continue;
            if (row_sum(n) != factorial(n)) return "row " + std::to_string(n) + " does not sum to n!";
            if (r.back() <= 0) return "row " + std::to_string(n) + " has zero top entry";
        }
        return {};
    }

    bool operator==(const CountTable&) const = default;

private:
    std::map<unsigned, Row> rows_;
};

}  // namespace kinks
