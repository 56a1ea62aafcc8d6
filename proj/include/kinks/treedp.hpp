#pragma once

// Counting through the generating tree of Vec labels (j, k, r).
//
//   roots:  (2,0,0) for 12 and (1,0,1) for 21
//   (j,k,0) -> (1,k+1,1) ... (j,k+1,1) (j+1,k,0) ... (n+1,k,0)
//   (j,k,1) -> (1,k,1)   ... (j,k,1)   (j+1,k,0) ... (n+1,k,0)
//
// Level n holds g[j][k][r], the number of words of length n with that label.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinks/core.hpp"

namespace kinks {

/// Ordered children of a node with `label` at level n; child m has its maximum at position m.
inline std::vector<KinkLabel> succession_children(const KinkLabel& label, unsigned n) {
    if (n < 2 || label.j < 1 || label.j > n || label.r > 1)
        throw std::invalid_argument("succession_children: malformed label for level " + std::to_string(n));
    std::vector<KinkLabel> children;
    children.reserve(n + 1);
    const unsigned k_low = label.r == 0 ? label.k + 1 : label.k;
    for (unsigned m = 1; m <= label.j; ++m) children.push_back({m, k_low, 1});
    for (unsigned m = label.j + 1; m <= n + 1; ++m) children.push_back({m, label.k, 0});
    return children;
}

/// Node counts of one tree level.  k is allocated up to floor(n/2).
class LevelState {
public:
    static LevelState roots() {
        LevelState s(2);
        s.at(2, 0, 0) = 1;
        s.at(1, 0, 1) = 1;
        return s;
    }

    explicit LevelState(unsigned n) : n_(n), k_cap_(n / 2), g_(std::size_t{n} * (k_cap_ + 1) * 2) {
        if (n < 2) throw std::invalid_argument("LevelState: level must be >= 2");
    }

    unsigned level() const { return n_; }
    unsigned k_cap() const { return k_cap_; }

    BigInt& at(unsigned j, unsigned k, unsigned r) { return g_[index(j, k, r)]; }
    const BigInt& at(unsigned j, unsigned k, unsigned r) const { return g_[index(j, k, r)]; }

    /// Value with zero outside the allocated k range.
    BigInt get(unsigned j, unsigned k, unsigned r) const { return k > k_cap_ ? BigInt(0) : at(j, k, r); }

    BigInt total() const {
        BigInt t = 0;
        for (const auto& x : g_) t += x;
        return t;
    }

    /// h_n(v) coefficients: sum over j and r, trimmed to d <= max_kinks(n).
    CountTable::Row k_marginal() const {
        CountTable::Row row(k_cap_ + 1, 0);
        for (unsigned j = 1; j <= n_; ++j)
            for (unsigned k = 0; k <= k_cap_; ++k) row[k] += at(j, k, 0) + at(j, k, 1);
        for (unsigned k = max_kinks(n_) + 1; k <= k_cap_; ++k)
            if (row[k] != 0) throw std::logic_error("LevelState: nonzero count above max_kinks");
        row.resize(max_kinks(n_) + 1);
        return row;
    }

    bool operator==(const LevelState&) const = default;

private:
    std::size_t index(unsigned j, unsigned k, unsigned r) const {
        if (j < 1 || j > n_ || k > k_cap_ || r > 1) throw std::out_of_range("LevelState: index out of range");
        return ((std::size_t{j} - 1) * (k_cap_ + 1) + k) * 2 + r;
    }

    unsigned n_;
    unsigned k_cap_;
    std::vector<BigInt> g_;
};

/// Level n -> n+1 with running prefix sums over j (r = 0) and suffix sums (r = 1).
inline LevelState advance_level(const LevelState& s) {
    const unsigned n = s.level();
    LevelState next(n + 1);
    for (unsigned k = 0; k <= next.k_cap(); ++k) {
        // g'[m][k][0] = sum_{i<m} g[i][k][0] + g[i][k][1]
        BigInt prefix = 0;
        for (unsigned m = 1; m <= n + 1; ++m) {
            next.at(m, k, 0) = prefix;
            if (m <= n) prefix += s.get(m, k, 0) + s.get(m, k, 1);
        }
        // g'[m][k][1] = sum_{i>=m} g[i][k-1][0] + g[i][k][1]
        BigInt suffix = 0;
        for (unsigned m = n + 1; m >= 1; --m) {
            if (m <= n) {
                suffix += s.get(m, k, 1);
                if (k > 0) suffix += s.get(m, k - 1, 0);
            }
            next.at(m, k, 1) = suffix;
        }
    }
    return next;
}

/// Exact #F_n^d for 1 <= n <= n_max; row 1 is {1} by convention.
inline CountTable dp_table(unsigned n_max) {
    if (n_max < 1) throw std::invalid_argument("dp_table: n_max must be >= 1");
    CountTable table;
    table.set_row(1, {1});
    if (n_max == 1) return table;
    LevelState level = LevelState::roots();
    table.set_row(2, level.k_marginal());
    for (unsigned n = 3; n <= n_max; ++n) {
        level = advance_level(level);
        table.set_row(n, level.k_marginal());
    }
    return table;
}

/// The level-n state itself (n >= 2).
inline LevelState dp_level(unsigned n) {
    if (n < 2) throw std::invalid_argument("dp_level: n must be >= 2");
    LevelState level = LevelState::roots();
    while (level.level() < n) level = advance_level(level);
    return level;
}

struct LabelMismatch {
    History parent;
    unsigned insert_position;  // new maximum lands at this 1-based position
    KinkLabel predicted;
    KinkLabel actual;
};

struct LabelConsistencyReport {
    unsigned n_max = 0;
    std::size_t words_checked = 0;
    std::size_t insertions_checked = 0;
    std::vector<LabelMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/**
 * For every word of length 2..n_max-1 and every insertion point of the new
 * maximum, compares the child's directly computed label with the one the
 * succession rule predicts.  Exhaustive, so keep n_max small (<= 8 is cheap).
 */
inline LabelConsistencyReport tree_label_consistency(unsigned n_max) {
    if (n_max > 10) throw std::invalid_argument("tree_label_consistency: n_max above 10 is impractical");
    LabelConsistencyReport report;
    report.n_max = n_max;
    for (unsigned n = 2; n < n_max; ++n) {
        std::vector<unsigned> word(n);
        for (unsigned i = 0; i < n; ++i) word[i] = i + 1;
        do {
            const History parent(word);
            const auto children = succession_children(vec_label(parent), n);
            ++report.words_checked;
            for (unsigned pos = 1; pos <= n + 1; ++pos) {
                std::vector<unsigned> child = word;
                child.insert(child.begin() + (pos - 1), n + 1);
                const KinkLabel actual = vec_label(History(std::move(child)));
                ++report.insertions_checked;
                if (!(actual == children[pos - 1])) report.mismatches.push_back({parent, pos, children[pos - 1], actual});
            }
        } while (std::next_permutation(word.begin(), word.end()));
    }
    return report;
}

}  // namespace kinks
