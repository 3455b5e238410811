#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgq/error.hpp"
#include "lgq/gw_invariants.hpp"
#include "lgq/parse.hpp"
#include "lgq/verify.hpp"

// Command-line front end. run() takes the argument list without the program
// name and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 internal error, 2 usage or parse error (PARITY
// included), 3 failed mathematical assumption, 4 verification failure.
namespace lgq::cli {

using Record = nlohmann::ordered_json;

enum Exit : int { ok = 0, internal = 1, usage = 2, math = 3, verification = 4 };

inline int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parity:
    case ErrorCode::NonHomogeneous:
    case ErrorCode::Parse: return usage;
    case ErrorCode::NonInteger:
    case ErrorCode::Nonvanishing:
    case ErrorCode::ZeroDivisor:
    case ErrorCode::SingularEuler: return math;
    case ErrorCode::BackendMismatch: return verification;
    case ErrorCode::Cache: return internal;
    }
    return internal;
}

struct Common {
    std::string format = "text";
    std::string backend = "exact";
};

namespace detail {

inline std::string scalar_text(const Record& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string csv_cell(const Record& v) {
    const std::string s = scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline void emit_flat(const Record& r, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << r.dump() << '\n';
    } else if (format == "csv") {
        std::string header, row;
        for (const auto& [k, v] : r.items()) {
            header += (header.empty() ? "" : ",") + k;
            row += (row.empty() ? "" : ",") + csv_cell(v);
        }
        out << header << '\n' << row << '\n';
    } else {
        for (const auto& [k, v] : r.items()) out << k << ": " << scalar_text(v) << '\n';
    }
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return std::round(ms * 1000.0) / 1000.0;
}

/// Evaluates `f(backend)` with the chosen backend; "both" cross-checks float against exact.
template <class F>
Integer evaluate(const std::string& backend, int n, F&& f) {
    if (backend == "float") return f(float_backend_for_rank(n));
    const Integer exact = f(exact_backend_for_rank(n));
    if (backend == "both") {
        Integer approx;
        try {
            approx = f(float_backend_for_rank(n));
        } catch (const Error& e) {
            throw Error(ErrorCode::BackendMismatch, std::string("float backend failed: ") + e.what());
        }
        const Integer gap = abs(Integer(approx - exact));
        if (Rational(gap) > Rational(1, 1000000) * std::max(Rational(1), Rational(abs(exact))))
            throw Error(ErrorCode::BackendMismatch,
                        "exact " + exact.get_str() + " vs float " + approx.get_str());
    }
    return exact;
}

inline void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--backend", c.backend, "Number backend")
        ->check(CLI::IsMember({"exact", "float", "both"}))
        ->capture_default_str();
}

inline void note_low_genus(Record& r, long long g) {
    if (g <= 1) r["note"] = "formula value";
}

/// Runs `body`, which fills `r`; on an lgq::Error records the code instead.
template <class Body>
int guarded(Record& r, const Common& c, std::ostream& out, std::ostream& err, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    int code = ok;
    try {
        body();
    } catch (const Error& e) {
        r.erase("value");
        r["error_code"] = std::string(error_code_name(e.code()));
        r["error_message"] = e.what();
        code = exit_code_for(e.code());
    }
    r["elapsed_ms"] = ms_since(t0);
    if (code != ok && c.format == "text")
        err << "error[" << r["error_code"].get<std::string>() << "]: " << r["error_message"].get<std::string>()
            << '\n';
    else
        emit_flat(r, c.format, out);
    return code;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form Gromov-Witten invariants and Lagrangian subbundle counts for LG(n)", "lgq"};
    app.require_subcommand(1);

    Common common;
    int n = 0;
    long long genus = 0, degree = 0, ell = 0, e = 0;
    std::string partitions, poly, genus_range;
    std::string suite = "all";
    verify::SuiteOptions vopts;

    auto* gw = app.add_subcommand("gw", "Genus-g Gromov-Witten invariant");
    gw->add_option("--n", n, "Rank n of LG(n)")->required()->check(CLI::PositiveNumber);
    gw->add_option("--genus", genus, "Genus g")->required()->check(CLI::NonNegativeNumber);
    gw->add_option("--degree", degree, "Degree d")->required();
    gw->add_option("--partitions", partitions, "Insertions, e.g. \"2,1;2;1\"");
    detail::add_common(gw, common);

    auto* count = app.add_subcommand("count", "Number of maximal Lagrangian subbundles");
    count->add_option("--n", n, "Rank n")->required()->check(CLI::PositiveNumber);
    count->add_option("--genus", genus, "Genus g")->required()->check(CLI::NonNegativeNumber);
    count->add_option("--ell", ell, "Twist degree l")->required();
    detail::add_common(count, common);

    auto* intersect = app.add_subcommand("intersect", "Intersection number on the Lagrangian Quot scheme");
    intersect->add_option("--n", n, "Rank n")->required()->check(CLI::PositiveNumber);
    intersect->add_option("--genus", genus, "Genus g")->required()->check(CLI::NonNegativeNumber);
    intersect->add_option("--ell", ell, "Twist degree l")->required();
    intersect->add_option("--e", e, "Subsheaf degree e")->required();
    intersect->add_option("--poly", poly, "Polynomial, e.g. \"a1^2 + Q[2,1]\"")->required();
    detail::add_common(intersect, common);

    auto* table = app.add_subcommand("table", "Maximal counts over a genus range");
    table->add_option("--n", n, "Rank n")->required()->check(CLI::PositiveNumber);
    table->add_option("--genus-range", genus_range, "Inclusive range a..b")->required();
    table->add_option("--ell", ell, "Twist degree l")->required();
    detail::add_common(table, common);

    auto* ver = app.add_subcommand("verify", "Seeded verification suites");
    ver->add_option("--suite", suite, "identities | oracle | backends | all")
        ->check(CLI::IsMember(verify::suite_names()))
        ->capture_default_str();
    ver->add_option("--max-n", vopts.max_n, "Largest rank")->check(CLI::Range(1, 6))->capture_default_str();
    ver->add_option("--max-genus", vopts.max_genus, "Largest genus")->check(CLI::Range(0, 12))->capture_default_str();
    ver->add_option("--seed", vopts.seed, "RNG seed")->capture_default_str();
    ver->add_option("--cases", vopts.cases, "Random cases per suite")->check(CLI::Range(1, 100000))->capture_default_str();
    ver->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? ok : usage;
    }

    if (gw->parsed()) {
        Record r;
        r["command"] = "gw";
        r["n"] = n;
        r["genus"] = genus;
        r["degree"] = degree;
        r["partitions"] = partitions;
        r["backend"] = common.backend;
        return detail::guarded(r, common, out, err, [&] {
            const auto ins = parse_partitions(partitions, n);
            const auto d = dimension_condition(n, genus, ins);
            r["status"] = (d && *d == degree) ? "OK" : "DEGREE_MISMATCH";
            r["value"] = detail::evaluate(common.backend, n, [&](const auto& b) {
                return gw_invariant(b, n, genus, degree, ins);
            }).get_str();
            detail::note_low_genus(r, genus);
        });
    }

    if (count->parsed()) {
        Record r;
        r["command"] = "count";
        r["n"] = n;
        r["genus"] = genus;
        r["ell"] = ell;
        r["backend"] = common.backend;
        return detail::guarded(r, common, out, err, [&] {
            r["e"] = maximal_count_degree(n, genus, ell);
            r["value"] = detail::evaluate(common.backend, n, [&](const auto& b) {
                return maximal_count(b, n, genus, ell);
            }).get_str();
            detail::note_low_genus(r, genus);
        });
    }

    if (intersect->parsed()) {
        Record r;
        r["command"] = "intersect";
        r["n"] = n;
        r["genus"] = genus;
        r["ell"] = ell;
        r["e"] = e;
        r["poly"] = poly;
        r["backend"] = common.backend;
        return detail::guarded(r, common, out, err, [&] {
            const auto p = parse_polynomial(poly, n);
            const auto deg = p.weighted_degree();
            r["status"] = (deg && *deg == expected_dimension(n, e, ell, genus)) ? "OK" : "DEGREE_MISMATCH";
            r["value"] = detail::evaluate(common.backend, n, [&](const auto& b) {
                return intersection_number(b, n, genus, ell, e, p);
            }).get_str();
            detail::note_low_genus(r, genus);
        });
    }

    if (table->parsed()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::pair<long long, long long> range;
        try {
            range = parse_range(genus_range);
            if (range.first < 0) throw Error(ErrorCode::InvalidArgument, "genus range must be nonnegative");
        } catch (const Error& ex) {
            err << "error[" << error_code_name(ex.code()) << "]: " << ex.what() << '\n';
            return exit_code_for(ex.code());
        }
        auto rows = Record::array();
        int code = ok;
        for (long long g = range.first; g <= range.second; ++g) {
            Record row;
            row["n"] = n;
            row["g"] = g;
            row["ell"] = ell;
            try {
                row["e"] = maximal_count_degree(n, g, ell);
                row["N"] = detail::evaluate(common.backend, n, [&](const auto& b) {
                    return maximal_count(b, n, g, ell);
                }).get_str();
            } catch (const Error& ex) {
                row["error_code"] = std::string(error_code_name(ex.code()));
                if (ex.code() != ErrorCode::Parity) code = std::max(code, exit_code_for(ex.code()));
            }
            rows.push_back(std::move(row));
        }
        if (common.format == "json") {
            Record r;
            r["command"] = "table";
            r["n"] = n;
            r["ell"] = ell;
            r["genus_range"] = genus_range;
            r["backend"] = common.backend;
            r["rows"] = rows;
            r["elapsed_ms"] = detail::ms_since(t0);
            out << r.dump() << '\n';
        } else {
            const bool csv = common.format == "csv";
            const char* sep = csv ? "," : "\t";
            out << "n" << sep << "g" << sep << "ell" << sep << "e" << sep << "N" << '\n';
            for (const auto& row : rows) {
                out << row["n"].dump() << sep << row["g"].dump() << sep << row["ell"].dump() << sep;
                if (row.contains("error_code"))
                    out << (row.contains("e") ? row["e"].dump() : "") << sep << row["error_code"].get<std::string>();
                else
                    out << row["e"].dump() << sep << row["N"].get<std::string>();
                out << '\n';
            }
        }
        return code;
    }

    if (ver->parsed()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<verify::SuiteResult> results;
        try {
            results = verify::run_suite(suite, vopts);
        } catch (const Error& ex) {
            err << "error[" << error_code_name(ex.code()) << "]: " << ex.what() << '\n';
            return exit_code_for(ex.code());
        }
        bool passed = true;
        for (const auto& s : results) passed = passed && s.passed();
        constexpr std::size_t shown = 10;
        if (common.format == "json") {
            Record r;
            r["command"] = "verify";
            r["suite"] = suite;
            r["max_n"] = vopts.max_n;
            r["max_genus"] = vopts.max_genus;
            r["seed"] = std::to_string(vopts.seed);
            r["cases"] = vopts.cases;
            auto list = Record::array();
            for (const auto& s : results) {
                Record item;
                item["name"] = s.name;
                item["passed"] = s.passed();
                item["cases"] = s.cases;
                item["nontrivial"] = s.nontrivial;
                auto failures = Record::array();
                for (std::size_t i = 0; i < std::min(shown, s.failures.size()); ++i) failures.push_back(s.failures[i]);
                item["failures"] = failures;
                list.push_back(std::move(item));
            }
            r["results"] = list;
            r["passed"] = passed;
            r["elapsed_ms"] = detail::ms_since(t0);
            out << r.dump() << '\n';
        } else {
            for (const auto& s : results) {
                out << (s.passed() ? "PASS " : "FAIL ") << s.name << " cases=" << s.cases
                    << " nontrivial=" << s.nontrivial << '\n';
                for (std::size_t i = 0; i < std::min(shown, s.failures.size()); ++i)
                    out << "  " << s.failures[i] << '\n';
            }
            out << (passed ? "all suites passed" : "verification FAILED") << '\n';
        }
        return passed ? ok : verification;
    }
    return usage;
}

} // namespace lgq::cli
