// Acceptance suite.  `acceptance` runs every criterion; `acceptance N` runs criterion N.
// One PASS/FAIL line per criterion; exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "kinks/algebra.hpp"
#include "kinks/gf.hpp"
#include "kinks/io.hpp"
#include "kinks/oracle.hpp"
#include "kinks/treedp.hpp"
#include "kinks/verify.hpp"

namespace {

using namespace kinks;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string secs(double s) {
    std::ostringstream os;
    os.precision(3);
    os << s << "s";
    return os.str();
}

// Published h_2 .. h_10, kept separately from the library's copy.
const std::vector<std::vector<long long>> kPublished = {
    {2},
    {4, 2},
    {8, 16},
    {16, 88, 16},
    {32, 416, 272},
    {64, 1824, 2880, 272},
    {128, 7680, 24576, 7936},
    {256, 31616, 185856, 137216, 7936},
    {512, 128512, 1304832, 1841152, 353792},
};

void check_published(const CountTable& t, const std::string& name, Outcome& o) {
    for (unsigned n = 2; n <= 10; ++n) {
        const auto& want = kPublished[n - 2];
        if (!t.has_row(n) || t.row(n).size() != want.size()) {
            o.fail(name + ": row " + std::to_string(n) + " has wrong length");
            return;
        }
        for (std::size_t d = 0; d < want.size(); ++d)
            if (t.row(n)[d] != want[d])
                o.fail(name + ": n=" + std::to_string(n) + " d=" + std::to_string(d) + " got " + t.row(n)[d].str());
    }
}

Outcome golden_tables() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t_brute9 = Clock::now();
    brute_force_table(9);
    const double brute9 = seconds_since(t_brute9);
    check_published(dp_table(10), "dp", o);
    check_published(brute_force_table(10), "brute", o);
    check_published(expand_G(10, 4), "gf", o);
    const double total = seconds_since(t0);
    if (brute9 >= 5.0) o.fail("brute force up to n=9 took " + secs(brute9));
    if (total >= 60.0) o.fail("three-way check took " + secs(total));
    if (o.pass) o.detail = "h_2..h_10 exact by dp, brute, gf; brute<=9 " + secs(brute9) + ", total " + secs(total);
    return o;
}

Outcome f4_witnesses() {
    Outcome o;
    const std::set<std::string> f40 = {"1234", "2134", "2314", "2341", "3214", "3241", "3421", "4321"};
    const std::set<std::string> f41 = {"1243", "1324", "1342", "1423", "1432", "2143", "2413", "2431",
                                       "3124", "3142", "3412", "4123", "4132", "4213", "4231", "4312"};
    auto as_set = [](unsigned d) {
        std::multiset<std::string> s;
        for (const auto& h : enumerate_histories(4, d)) s.insert(h.str());
        return s;
    };
    const auto got0 = as_set(0), got1 = as_set(1);
    if (got0 != std::multiset<std::string>(f40.begin(), f40.end())) o.fail("F_4^0 differs from the 8-word table");
    if (got1 != std::multiset<std::string>(f41.begin(), f41.end())) o.fail("F_4^1 differs from the 16-word table");
    if (o.pass) o.detail = "8 + 16 words, exact set equality";
    return o;
}

Outcome partition_identity() {
    Outcome o;
    const auto dp = dp_table(12);
    const auto gf = expand_G(12, max_kinks(12));
    for (unsigned n = 1; n <= 12; ++n)
        if (dp.row_sum(n) != factorial(n)) o.fail("dp row " + std::to_string(n) + " does not sum to n!");
    for (unsigned n = 2; n <= 12; ++n)
        if (!gf.row_complete(n) || gf.row_sum(n) != factorial(n))
            o.fail("h_" + std::to_string(n) + "(1) from G(t,v) is not n!");
    if (o.pass) o.detail = "dp n<=12, G(t,v) n<=12";
    return o;
}

Outcome closed_forms() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto dp = dp_table(60);
    std::size_t checked = 0;
    for (unsigned d = 0; d <= 3; ++d) {
        for (unsigned n = 2 * d + 1; n <= 60; ++n) {
            try {
                if (closed_form(n, d) != dp.at(n, d))
                    o.fail("n=" + std::to_string(n) + " d=" + std::to_string(d) + ": closed " + closed_form(n, d).str() +
                           " vs dp " + dp.at(n, d).str());
            } catch (const std::logic_error& e) {
                o.fail(e.what());  // a prefactor failed to divide
            }
            ++checked;
        }
    }
    const double t = seconds_since(t0);
    if (t >= 10.0) o.fail("took " + secs(t));
    if (o.pass) o.detail = std::to_string(checked) + " entries exact, " + secs(t);
    return o;
}

Outcome corollary_series() {
    Outcome o;
    const auto dp = dp_table(60);
    for (unsigned d = 0; d <= 3; ++d) {
        const auto h = expand_hd(d, 20);
        for (unsigned n = 2; n <= 20; ++n)
            if (h[n - 2] != dp.at(n, d))
                o.fail("h^" + std::to_string(d) + " coefficient of t^" + std::to_string(n) + " is " + h[n - 2].str());
    }
    for (unsigned n = 1; n <= 60; ++n)
        if (dp.at(n, 0) != BigInt(1) << (n - 1)) o.fail("#F_n^0 != 2^(n-1) at n=" + std::to_string(n));
    if (o.pass) o.detail = "h^0..h^3 to t^20 equal dp columns; #F_n^0 = 2^(n-1) for n<=60";
    return o;
}

Outcome tree_consistency() {
    Outcome o;
    const auto rep = tree_label_consistency(8);
    if (!rep.ok()) {
        std::ostringstream os;
        const auto& m = rep.mismatches.front();
        os << rep.mismatches.size() << " mismatches, first: " << m.parent << " insert at " << m.insert_position;
        o.fail(os.str());
    }
    LevelState level = LevelState::roots();
    for (unsigned n = 2; n <= 60; ++n) {
        if (n > 2) level = advance_level(level);
        if (level.total() != factorial(n)) o.fail("level " + std::to_string(n) + " total is not n!");
    }
    if (o.pass) o.detail = std::to_string(rep.insertions_checked) + " insertions, 0 mismatches; level totals n! to 60";
    return o;
}

Outcome asymptotics() {
    Outcome o;
    const auto dp = dp_table(60);
    const Rat limit(1, 1000000);

    const auto r0 = convergence_report(0, 60, {}, &dp);
    for (const auto& r : r0.rows)
        if (r.deviation != 0) o.fail("d=0 deviation nonzero at n=" + std::to_string(r.n));

    const auto r1 = convergence_report(1, 60, {}, &dp);
    for (const auto& r : r1.rows)
        if (r.deviation != Rat(2 * r.n, BigInt(1) << r.n)) o.fail("d=1 deviation != 2n/2^n at n=" + std::to_string(r.n));

    std::string tail;
    for (unsigned d = 2; d <= 3; ++d) {
        const auto rep = convergence_report(d, 60, limit, &dp);
        if (!rep.monotone)
            o.fail("d=" + std::to_string(d) + " deviation not strictly decreasing at n=" +
                   std::to_string(*rep.first_non_decrease));
        const auto& dev = rep.rows.back().deviation;
        if (!rep.below_threshold)
            o.fail("d=" + std::to_string(d) + " deviation at n=60 is " + to_decimal(dev) + ", not < 1e-6");
        tail += " d=" + std::to_string(d) + ":" + to_decimal(dev);
    }
    if (o.pass) o.detail = "d=0 exact, d=1 = 2n/2^n, n=60 deviations" + tail;
    return o;
}

Outcome algebra_exactness() {
    Outcome o;
    const auto t0 = Clock::now();
    for (unsigned d = 0; d <= 16; ++d) {
        const auto s = sqrt_one_minus_v(d);
        if (!(s * s == TruncPoly::one(d) - TruncPoly::monomial(d, 1))) o.fail("sigma^2 != 1 - v at D=" + std::to_string(d));
    }
    std::mt19937_64 rng(8128);
    std::uniform_int_distribution<int> coeff(-3, 3), unit(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        TSeries a(16, 8);
        for (unsigned m = 0; m <= 16; ++m)
            for (unsigned k = 0; k <= 8; ++k) a[m][k] = coeff(rng);
        a[0][0] = Rat(unit(rng) * (trial % 2 ? 1 : -1));
        if (!(a * tseries_inverse(a) == TSeries::one(16, 8))) o.fail("a * a^-1 != 1 in trial " + std::to_string(trial));
    }
    const double t = seconds_since(t0);
    if (t >= 5.0) o.fail("took " + secs(t));
    if (o.pass) o.detail = "D<=16 and 100 random unit series at (16,8), " + secs(t);
    return o;
}

Outcome scale() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t = dp_table(200);
    const double s = seconds_since(t0);
    if (t.row_sum(200) != factorial(200)) o.fail("row 200 does not sum to 200!");
    if (s >= 30.0) o.fail("dp_table(200) took " + secs(s));
    if (o.pass) o.detail = "dp_table(200) in " + secs(s) + ", row sum = 200! (" + std::to_string(factorial(200).str().size()) + " digits)";
    return o;
}

Outcome cli_verify() {
    Outcome o;
    const auto first = kinks::testing::run_cli("verify");
    const auto second = kinks::testing::run_cli("verify");
    if (first.exit_code != 0) o.fail("verify with defaults exited " + std::to_string(first.exit_code));
    if (first.out != second.out) o.fail("verify output differs between runs");

    const auto path = std::filesystem::temp_directory_path() / "kinks_acceptance_golden.json";
    std::size_t corrupted = 0;
    for (unsigned n = 2; n <= 10; ++n) {
        for (std::size_t d = 0; d < kPublished[n - 2].size(); ++d) {
            auto golden = golden_table();
            auto row = golden.row(n);
            row[d] += 1;
            golden.set_row(n, row);
            {
                std::ofstream f(path);
                write_json(f, golden);
            }
            const auto r = kinks::testing::run_cli("verify --golden '" + path.string() + "'");
            if (r.exit_code != 1) o.fail("corrupted n=" + std::to_string(n) + " d=" + std::to_string(d) + " exited " +
                                         std::to_string(r.exit_code));
            ++corrupted;
        }
    }
    std::filesystem::remove(path);
    if (o.pass) o.detail = "defaults exit 0, identical output twice, " + std::to_string(corrupted) + "/" +
                           std::to_string(corrupted) + " corrupted golden values exit 1";
    return o;
}

struct Criterion {
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"golden tables h_2..h_10", golden_tables},
        {"F_4 witnesses", f4_witnesses},
        {"partition identity", partition_identity},
        {"closed forms d<=3", closed_forms},
        {"corollary series", corollary_series},
        {"generating-tree consistency", tree_consistency},
        {"asymptotics", asymptotics},
        {"algebra exactness", algebra_exactness},
        {"scale n=200", scale},
        {"cli verify", cli_verify},
    };

    std::vector<std::size_t> selected;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [1.." << criteria.size() << "]\n";
            return 2;
        }
        selected.push_back(static_cast<std::size_t>(k - 1));
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);
    }

    int failures = 0;
    for (auto i : selected) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << (i + 1) << ": " << criteria[i].title << ": "
                  << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
