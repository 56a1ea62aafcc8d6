#pragma once

// Ground-truth counting: exhaustive scan of S_n and a backtracking generator
// that follows the flip process directly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "kinks/core.hpp"

namespace kinks {

inline constexpr unsigned kDefaultBruteCeiling = 11;
inline constexpr unsigned kBacktrackCountLimit = 20;

/// Counts every permutation of 1..n for n = 1..n_max by kink statistic.
inline CountTable brute_force_table(unsigned n_max, unsigned ceiling = kDefaultBruteCeiling) {
    if (n_max < 1) throw std::invalid_argument("brute_force_table: n_max must be >= 1");
    if (n_max > ceiling)
        throw std::invalid_argument("brute_force_table: n_max " + std::to_string(n_max) +
                                    " exceeds ceiling " + std::to_string(ceiling));
    CountTable table;
    for (unsigned n = 1; n <= n_max; ++n) {
        // One worker per first letter; partial rows are merged in letter order.
        std::vector<std::vector<std::uint64_t>> partial(n, std::vector<std::uint64_t>(max_kinks(n) + 1, 0));
        auto scan = [n, &partial](unsigned first) {
            std::vector<unsigned> rest;
            for (unsigned s = 1; s <= n; ++s)
                if (s != first) rest.push_back(s);
            std::vector<char> flipped(n + 2);
            auto& counts = partial[first - 1];
            do {
                std::fill(flipped.begin(), flipped.end(), 0);
                flipped[first] = 1;
                unsigned d = 0;
                for (unsigned s : rest) {
                    if (!flipped[s - 1] && !flipped[s + 1]) ++d;
                    flipped[s] = 1;
                }
                ++counts[d];
            } while (std::next_permutation(rest.begin(), rest.end()));
        };
        if (n >= 8) {
            std::vector<std::jthread> workers;
            for (unsigned f = 1; f <= n; ++f) workers.emplace_back(scan, f);
        } else {
            for (unsigned f = 1; f <= n; ++f) scan(f);
        }
        CountTable::Row row(max_kinks(n) + 1, 0);
        for (const auto& p : partial)
            for (std::size_t d = 0; d < p.size(); ++d) row[d] += p[d];
        table.set_row(n, std::move(row));
    }
    return table;
}

/**
 * The flipped sites of a partial history as sorted disjoint maximal intervals.
 */
class BlockSet {
public:
    struct Interval {
        unsigned lo, hi;
    };

    explicit BlockSet(unsigned n) : n_(n) {}

    unsigned chain_length() const { return n_; }
    bool empty() const { return blocks_.empty(); }
    const std::vector<Interval>& blocks() const { return blocks_; }

    bool contains(unsigned s) const {
        return std::any_of(blocks_.begin(), blocks_.end(), [s](const Interval& b) { return b.lo <= s && s <= b.hi; });
    }

    /// Unflipped site touching at least one block: flipping it is free.
    bool touches(unsigned s) const {
        if (contains(s)) return false;
        return std::any_of(blocks_.begin(), blocks_.end(),
                           [s](const Interval& b) { return b.lo == s + 1 || b.hi + 1 == s; });
    }

    /// Unflipped site at distance >= 2 from every block: flipping it opens a new kink.
    bool isolated(unsigned s) const {
        return std::all_of(blocks_.begin(), blocks_.end(),
                           [s](const Interval& b) { return s + 1 < b.lo || s > b.hi + 1; });
    }

    void add(unsigned s) {
        auto it = std::lower_bound(blocks_.begin(), blocks_.end(), s,
                                   [](const Interval& b, unsigned v) { return b.hi < v; });
        const bool join_left = it != blocks_.begin() && std::prev(it)->hi + 1 == s;
        const bool join_right = it != blocks_.end() && it->lo == s + 1;
        if (join_left && join_right) {
            std::prev(it)->hi = it->hi;
            blocks_.erase(it);
        } else if (join_left) {
            std::prev(it)->hi = s;
        } else if (join_right) {
            it->lo = s;
        } else {
            blocks_.insert(it, Interval{s, s});
        }
    }

    /// Largest number of new blocks that can still be opened in the remaining gaps.
    unsigned kink_capacity() const {
        if (blocks_.empty()) return n_ == 0 ? 0 : (n_ - 1) / 2;
        unsigned cap = (blocks_.front().lo - 1) / 2 + (n_ - blocks_.back().hi) / 2;
        for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
            const unsigned gap = blocks_[i + 1].lo - blocks_[i].hi - 1;
            if (gap >= 1) cap += (gap - 1) / 2;
        }
        return cap;
    }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (const auto& b : blocks_)
            for (unsigned s = b.lo; s <= b.hi; ++s) m |= std::uint64_t{1} << (s - 1);
        return m;
    }

private:
    unsigned n_;
    std::vector<Interval> blocks_;
};

namespace detail {

inline void check_history_range(unsigned n, unsigned d, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (d > max_kinks(n))
        throw std::invalid_argument(std::string(who) + ": d=" + std::to_string(d) + " exceeds max_kinks(" +
                                    std::to_string(n) + ")=" + std::to_string(max_kinks(n)));
}

// Site choices at the current step, ascending.  A choice is (site, costs_a_kink).
inline std::vector<std::pair<unsigned, bool>> moves(const BlockSet& blocks, unsigned credits) {
    std::vector<std::pair<unsigned, bool>> out;
    const unsigned n = blocks.chain_length();
    for (unsigned s = 1; s <= n; ++s) {
        if (blocks.empty() || blocks.touches(s)) {
            out.emplace_back(s, false);
        } else if (credits > 0 && blocks.isolated(s)) {
            out.emplace_back(s, true);
        }
    }
    return out;
}

inline bool walk(BlockSet& blocks, std::vector<unsigned>& word, unsigned credits,
                 const std::function<bool(const History&)>& visit) {
    const unsigned n = blocks.chain_length();
    if (word.size() == n) return credits != 0 || visit(History(word));
    for (auto [site, costly] : moves(blocks, credits)) {
        BlockSet next = blocks;
        next.add(site);
        const unsigned left = credits - (costly ? 1u : 0u);
        if (left > next.kink_capacity()) continue;
        word.push_back(site);
        const bool keep_going = walk(next, word, left, visit);
        word.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace detail

/// Calls `visit` on each history of F_n^d in lexicographic order; stop early by returning false.
inline void for_each_history(unsigned n, unsigned d, const std::function<bool(const History&)>& visit) {
    detail::check_history_range(n, d, "enumerate_histories");
    BlockSet blocks(n);
    std::vector<unsigned> word;
    word.reserve(n);
    detail::walk(blocks, word, d, visit);
}

inline std::vector<History> enumerate_histories(unsigned n, unsigned d, std::optional<std::size_t> limit = {}) {
    std::vector<History> out;
    if (limit && *limit == 0) {
        detail::check_history_range(n, d, "enumerate_histories");
        return out;
    }
    for_each_history(n, d, [&](const History& h) {
        out.push_back(h);
        return !limit || out.size() < *limit;
    });
    return out;
}

/// Number of histories the generator would emit, memoised on (flipped set, credits).
inline BigInt backtrack_count(unsigned n, unsigned d) {
    detail::check_history_range(n, d, "backtrack_count");
    if (n > kBacktrackCountLimit)
        throw std::invalid_argument("backtrack_count: n above " + std::to_string(kBacktrackCountLimit));
    std::unordered_map<std::uint64_t, BigInt> memo;
    std::function<BigInt(const BlockSet&, unsigned, unsigned)> count =
        [&](const BlockSet& blocks, unsigned flipped, unsigned credits) -> BigInt {
        if (flipped == n) return credits == 0 ? 1 : 0;
        const std::uint64_t key = (blocks.mask() << 6) | credits;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigInt total = 0;
        for (auto [site, costly] : detail::moves(blocks, credits)) {
            BlockSet next = blocks;
            next.add(site);
            const unsigned left = credits - (costly ? 1u : 0u);
            if (left > next.kink_capacity()) continue;
            total += count(next, flipped + 1, left);
        }
        memo.emplace(key, total);
        return total;
    };
    return count(BlockSet(n), 0, d);
}

}  // namespace kinks
