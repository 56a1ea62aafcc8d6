// kinks: count, enumerate and verify Ising-chain flip histories by kink number.
//
// Exit codes: 0 success, 1 verification mismatch or internal failure, 2 usage / range error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinks/core.hpp"
#include "kinks/gf.hpp"
#include "kinks/io.hpp"
#include "kinks/oracle.hpp"
#include "kinks/treedp.hpp"
#include "kinks/verify.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned brute_ceiling() {
    const char* env = std::getenv("KINKS_BRUTE_CEILING");
    if (env == nullptr) return kinks::kDefaultBruteCeiling;
    const std::string s(env);
    if (s.empty() || s.size() > 3 || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0)
        throw UsageError("KINKS_BRUTE_CEILING must be a positive integer");
    return static_cast<unsigned>(std::stoul(s));
}

const std::vector<std::string> kMethods = {"brute", "backtrack", "dp", "gf", "closed"};

// Why `method` cannot produce #F_n^d, or "" if it can.
std::string method_range_error(const std::string& method, unsigned n, unsigned d) {
    if (method == "brute" && n > brute_ceiling())
        return "brute: n=" + std::to_string(n) + " exceeds ceiling " + std::to_string(brute_ceiling());
    if (method == "backtrack" && n > kinks::kBacktrackCountLimit)
        return "backtrack: n above " + std::to_string(kinks::kBacktrackCountLimit);
    if (method == "gf" && n < 2) return "gf: series starts at n=2";
    if (method == "closed" && d > 3) return "closed: closed forms exist only for d <= 3";
    return {};
}

kinks::BigInt count_with(const std::string& method, unsigned n, unsigned d) {
    if (method == "brute") return kinks::brute_force_table(n, brute_ceiling()).at(n, d);
    if (method == "backtrack") return kinks::backtrack_count(n, d);
    if (method == "dp") return kinks::dp_table(n).at(n, d);
    if (method == "gf") return kinks::expand_G(n, d).at(n, d);
    return kinks::closed_form(n, d);
}

kinks::CountTable table_with(const std::string& method, unsigned max_n) {
    using namespace kinks;
    CountTable full;
    if (method == "dp") {
        full = dp_table(max_n);
    } else if (method == "brute") {
        if (max_n > brute_ceiling())
            throw UsageError("brute: max-n exceeds ceiling " + std::to_string(brute_ceiling()));
        full = brute_force_table(max_n, brute_ceiling());
    } else if (method == "gf") {
        full = expand_G(max_n, max_kinks(max_n));
    } else {
        if (method == "backtrack" && max_n > kBacktrackCountLimit)
            throw UsageError("backtrack: max-n above " + std::to_string(kBacktrackCountLimit));
        if (method == "closed" && max_kinks(max_n) > 3) throw UsageError("closed: rows above n=8 need d > 3");
        for (unsigned n = 2; n <= max_n; ++n) {
            CountTable::Row row;
            for (unsigned d = 0; d <= max_kinks(n); ++d)
                row.push_back(method == "backtrack" ? backtrack_count(n, d) : closed_form(n, d));
            full.set_row(n, std::move(row));
        }
    }
    // exported tables start at n = 2
    CountTable out;
    for (const auto& [n, row] : full.rows())
        if (n >= 2) out.set_row(n, row);
    return out;
}

// Writes to `path` (or stdout when empty) through `emit`.
template <typename Emit>
void write_output(const std::string& path, Emit emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + path);
    emit(f);
    f.flush();
    if (!f) throw UsageError("failed writing output file: " + path);
}

kinks::CountTable load_golden(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open golden file: " + path);
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    try {
        return csv ? kinks::read_csv(f) : kinks::read_json(f);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad golden file: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counts of Ising-chain flip histories by number of kinks"};
    app.require_subcommand(1);

    // count
    unsigned c_n = 0, c_d = 0;
    std::string c_method = "dp";
    bool c_all = false;
    auto* count = app.add_subcommand("count", "Print #F_n^d");
    count->add_option("--n", c_n, "Chain length")->required();
    count->add_option("--d", c_d, "Number of extra kinks")->required();
    count->add_option("--method", c_method, "Counting method")->check(CLI::IsMember(kMethods));
    count->add_flag("--all-methods", c_all, "Run every applicable method and compare");

    // table
    unsigned t_max = 10;
    std::string t_method = "dp", t_format = "csv", t_output;
    auto* table = app.add_subcommand("table", "Export #F_n^d for 2 <= n <= max-n");
    table->add_option("--max-n", t_max, "Largest chain length")->required();
    table->add_option("--method", t_method, "Counting method")->check(CLI::IsMember(kMethods));
    table->add_option("--format", t_format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    table->add_option("--output,-o", t_output, "Output file (default stdout)");

    // enumerate
    unsigned e_n = 0, e_d = 0;
    std::optional<std::size_t> e_limit;
    auto* enumerate = app.add_subcommand("enumerate", "List the histories in F_n^d, lexicographically");
    enumerate->add_option("--n", e_n, "Chain length")->required();
    enumerate->add_option("--d", e_d, "Number of extra kinks")->required();
    enumerate->add_option("--limit", e_limit, "Stop after this many histories");

    // verify
    kinks::VerifyOptions v_opt;
    std::string v_golden;
    auto* verify = app.add_subcommand("verify", "Cross-check all counting methods");
    verify->add_option("--max-n-brute", v_opt.max_n_brute, "Largest n for brute force")->capture_default_str();
    verify->add_option("--max-n-dp", v_opt.max_n_dp, "Largest n for the tree recurrence")->capture_default_str();
    verify->add_option("--t-order", v_opt.t_order, "t truncation of G(t,v)")->capture_default_str();
    verify->add_option("--v-order", v_opt.v_order, "v truncation of G(t,v)")->capture_default_str();
    verify->add_option("--golden", v_golden, "Reference table (JSON, or CSV by .csv extension)");

    // asym
    unsigned a_d = 0, a_max = 20;
    std::string a_format = "csv";
    auto* asym = app.add_subcommand("asym", "Exact vs asymptotic counts");
    asym->add_option("--d", a_d, "Number of extra kinks")->required();
    asym->add_option("--max-n", a_max, "Largest chain length")->required();
    asym->add_option("--format", a_format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*count) {
            if (c_n < 1) throw UsageError("--n must be >= 1");
            if (c_d > kinks::max_kinks(c_n))
                throw UsageError("--d exceeds max_kinks(n) = " + std::to_string(kinks::max_kinks(c_n)));
            if (!c_all) {
                if (auto err = method_range_error(c_method, c_n, c_d); !err.empty()) throw UsageError(err);
                std::cout << count_with(c_method, c_n, c_d) << '\n';
                return 0;
            }
            std::optional<kinks::BigInt> first;
            bool agree = true;
            for (const auto& m : kMethods) {
                if (!method_range_error(m, c_n, c_d).empty()) continue;
                const auto v = count_with(m, c_n, c_d);
                std::cout << m << ' ' << v << '\n';
                if (!first) first = v;
                agree = agree && v == *first;
            }
            if (!agree) {
                std::cerr << "methods disagree\n";
                return kExitMismatch;
            }
            return 0;
        }
        if (*table) {
            if (t_max < 2) throw UsageError("--max-n must be >= 2");
            const auto tbl = table_with(t_method, t_max);
            write_output(t_output, [&](std::ostream& os) {
                if (t_format == "csv") kinks::write_csv(os, tbl);
                else if (t_format == "json") kinks::write_json(os, tbl);
                else kinks::write_text(os, tbl);
            });
            return 0;
        }
        if (*enumerate) {
            if (e_n < 1) throw UsageError("--n must be >= 1");
            if (e_d > kinks::max_kinks(e_n))
                throw UsageError("--d exceeds max_kinks(n) = " + std::to_string(kinks::max_kinks(e_n)));
            std::size_t emitted = 0;
            if (e_limit && *e_limit == 0) return 0;
            kinks::for_each_history(e_n, e_d, [&](const kinks::History& h) {
                std::cout << h.str() << '\n';
                return !e_limit || ++emitted < *e_limit;
            });
            return 0;
        }
        if (*verify) {
            if (!v_golden.empty()) v_opt.golden = load_golden(v_golden);
            v_opt.brute_ceiling = brute_ceiling();
            if (v_opt.max_n_brute > v_opt.brute_ceiling)
                throw UsageError("--max-n-brute exceeds ceiling " + std::to_string(v_opt.brute_ceiling));
            if (v_opt.t_order < 2) throw UsageError("--t-order must be >= 2");
            const auto result = kinks::run_verify(v_opt);
            kinks::print_verify(std::cout, result);
            return result.ok() ? 0 : kExitMismatch;
        }
        if (*asym) {
            const unsigned n_min = std::max(1u, 2 * a_d + 1);
            if (a_max < n_min) throw UsageError("--max-n must be >= " + std::to_string(n_min));
            const auto rep = kinks::convergence_report(a_d, a_max);
            if (a_format == "csv") kinks::write_report_csv(std::cout, rep);
            else if (a_format == "json") kinks::write_report_json(std::cout, rep);
            else kinks::write_report_text(std::cout, rep);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return 0;
}
