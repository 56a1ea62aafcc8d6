#pragma once

// Test-only reference computations.  None of these call into the code paths
// they are used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "kinks/core.hpp"
#include "kinks/treedp.hpp"

namespace kinks::testing {

/// Simulates the chain configuration and counts how often the number of
/// maximal +-blocks goes up; d is that number minus the initial block.
inline unsigned kinks_by_block_count(const std::vector<unsigned>& word) {
    const std::size_t n = word.size();
    std::vector<char> plus(n + 2, 0);
    auto blocks = [&] {
        unsigned b = 0;
        for (std::size_t s = 1; s <= n; ++s)
            if (plus[s] && !plus[s - 1]) ++b;
        return b;
    };
    unsigned created = 0;
    unsigned before = 0;
    for (unsigned s : word) {
        plus[s] = 1;
        const unsigned after = blocks();
        if (after > before) ++created;
        before = after;
    }
    return created - 1;
}

/// Row n of #F_n^d by enumerating S_n with the block-count simulation.
inline std::vector<std::uint64_t> enumerate_row(unsigned n) {
    std::vector<unsigned> w(n);
    std::iota(w.begin(), w.end(), 1u);
    std::vector<std::uint64_t> row((n + 1) / 2 + 1, 0);
    do {
        ++row[kinks_by_block_count(w)];
    } while (std::next_permutation(w.begin(), w.end()));
    while (row.size() > 1 && row.back() == 0) row.pop_back();
    return row;
}

/// advance_level written as the literal double sum, no prefix sums.
inline LevelState advance_level_naive(const LevelState& s) {
    const unsigned n = s.level();
    LevelState next(n + 1);
    for (unsigned m = 1; m <= n + 1; ++m) {
        for (unsigned k = 0; k <= next.k_cap(); ++k) {
            BigInt r0 = 0, r1 = 0;
            for (unsigned i = 1; i <= m - 1 && i <= n; ++i) r0 += s.get(i, k, 0) + s.get(i, k, 1);
            for (unsigned i = m; i <= n; ++i) {
                r1 += s.get(i, k, 1);
                if (k > 0) r1 += s.get(i, k - 1, 0);
            }
            next.at(m, k, 0) = r0;
            next.at(m, k, 1) = r1;
        }
    }
    return next;
}

/// Node labels of the generating tree built by applying the rules literally, level by level.
inline std::map<std::tuple<unsigned, unsigned, unsigned>, BigInt> expand_tree_labels(unsigned n) {
    std::map<std::tuple<unsigned, unsigned, unsigned>, BigInt> level{{{2, 0, 0}, 1}, {{1, 0, 1}, 1}};
    for (unsigned cur = 2; cur < n; ++cur) {
        std::map<std::tuple<unsigned, unsigned, unsigned>, BigInt> next;
        for (const auto& [label, c] : level) {
            const auto [j, k, r] = label;
            for (unsigned m = 1; m <= cur + 1; ++m) {
                if (m <= j) next[{m, r == 0 ? k + 1 : k, 1}] += c;
                else next[{m, k, 0}] += c;
            }
        }
        level = std::move(next);
    }
    return level;
}

}  // namespace kinks::testing
