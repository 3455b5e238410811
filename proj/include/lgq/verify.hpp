#pragma once

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgq/gw_invariants.hpp"
#include "lgq/parse.hpp"
#include "lgq/quantum_cohomology.hpp"

/**
 * Seeded verification suites shared by the command line and the acceptance
 * binary. Each suite draws its random cases from a std::mt19937_64 seeded
 * with the caller's seed, so a run is reproducible bit for bit.
 */
namespace lgq::verify {

struct SuiteResult {
    explicit SuiteResult(std::string suite_name = {}) : name(std::move(suite_name)) {}

    std::string name;
    std::size_t cases = 0;
    /// Cases whose compared value was nonzero; guards against suites that only compare zeros.
    std::size_t nontrivial = 0;
    std::vector<std::string> failures;
    double elapsed_ms = 0;

    bool passed() const noexcept { return cases > 0 && failures.empty(); }
};

struct SuiteOptions {
    int max_n = 3;
    int min_genus = 0;
    int max_genus = 4;
    std::uint64_t seed = 1;
    int cases = 50;
};

/// Bounds of the integrality grid; every (n, g, l, e) in range is visited.
struct GridOptions {
    int max_n = 4;
    int max_genus = 5;
    int max_abs_e = 8;
    std::vector<int> ells{-2, -1, 0, 1, 2};
    std::uint64_t seed = 1;
};

inline long long uniform(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// alpha_{k_1} ... alpha_{k_s} with sum k_i = degree, each k_i in 1..n.
inline SchubertExpression random_monomial(std::mt19937_64& rng, int n, long long degree) {
    std::vector<int> vars;
    for (long long left = degree; left > 0;) {
        const int k = static_cast<int>(uniform(rng, 1, std::min<long long>(n, left)));
        vars.push_back(k);
        left -= k;
    }
    std::sort(vars.rbegin(), vars.rend());
    return SchubertExpression::monomial(n, vars);
}

/// Nonempty strict partitions with total weight exactly `weight`.
inline std::vector<StrictPartition> random_partition_multiset(std::mt19937_64& rng, int n, long long weight) {
    const auto all = strict_partitions(n);
    std::vector<StrictPartition> out;
    for (long long left = weight; left > 0;) {
        std::vector<const StrictPartition*> fit;
        for (const auto& p : all)
            if (p.weight() >= 1 && p.weight() <= left) fit.push_back(&p);
        const auto& pick = *fit[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(fit.size()) - 1))];
        out.push_back(pick);
        left -= pick.weight();
    }
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

/// A homogeneous polynomial of the given weighted degree: a monomial, a Q~ product, or a two-term mix.
inline SchubertExpression random_polynomial(std::mt19937_64& rng, int n, long long degree) {
    switch (uniform(rng, 0, 2)) {
    case 0:
        return random_monomial(rng, n, degree);
    case 1:
        return SchubertExpression::product(n, random_partition_multiset(rng, n, degree));
    default: {
        long long c = 0;
        while (c == 0) c = uniform(rng, -3, 3);
        std::vector<SchubertTerm> terms = random_monomial(rng, n, degree).terms();
        terms.push_back(SchubertTerm{Rational(static_cast<long>(c)), random_partition_multiset(rng, n, degree)});
        return SchubertExpression(n, std::move(terms));
    }
    }
}

struct IntersectionCase {
    int n;
    long long g, ell, e;
    SchubertExpression p;

    std::string describe() const {
        return "n=" + std::to_string(n) + " g=" + std::to_string(g) + " l=" + std::to_string(ell) +
               " e=" + std::to_string(e) + " P=" + format_expression(p);
    }
};

/// Parameters with D(n, e, l) >= 0 and a polynomial of exactly that degree.
inline IntersectionCase random_intersection_case(std::mt19937_64& rng, int max_n, int min_genus, int max_genus) {
    const int n = static_cast<int>(uniform(rng, 1, max_n));
    const long long g = uniform(rng, min_genus, max_genus);
    const long long ell = uniform(rng, -3, 3);
    const long long nn = n;
    const long long base = nn * (nn + 1) / 2 * (g - 1 - ell);
    const long long e_max = floor_div(-base, nn + 1);
    const long long e = e_max - uniform(rng, 0, 2);
    const long long degree = expected_dimension(n, e, ell, g);
    return {n, g, ell, e, random_polynomial(rng, n, degree)};
}

struct GWCase {
    int n;
    long long g, d;
    std::vector<StrictPartition> insertions;

    std::string describe() const {
        return "n=" + std::to_string(n) + " g=" + std::to_string(g) + " d=" + std::to_string(d) + " insertions=\"" +
               format_partitions(insertions) + "\"";
    }
};

/// Insertions admitting an integer d >= 0 in the dimension condition.
inline GWCase random_gw_case(std::mt19937_64& rng, int max_n, int min_genus, int max_genus) {
    const int n = static_cast<int>(uniform(rng, 1, max_n));
    const long long g = uniform(rng, min_genus, max_genus);
    const long long nn = n;
    const long long base = nn * (nn + 1) * (1 - g) / 2;
    long long d_min = 0;
    while (base + d_min * (nn + 1) < 0) ++d_min;
    const long long d = d_min + uniform(rng, 0, 2);
    return {n, g, d, random_partition_multiset(rng, n, base + d * (nn + 1))};
}

namespace detail {

class Timer {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Check>
SuiteResult run_cases(std::string name, int cases, Check&& check) {
    SuiteResult r{std::move(name)};
    const Timer t;
    for (int i = 0; i < cases; ++i) {
        ++r.cases;
        try {
            check(r);
        } catch (const std::exception& ex) {
            r.failures.push_back(std::string("exception: ") + ex.what());
        }
    }
    r.elapsed_ms = t.elapsed_ms();
    return r;
}

inline void compare(SuiteResult& r, const Integer& lhs, const Integer& rhs, const std::string& what) {
    if (lhs != 0) ++r.nontrivial;
    if (lhs != rhs) r.failures.push_back(what + ": " + lhs.get_str() + " != " + rhs.get_str());
}

} // namespace detail

inline SuiteResult twist_suite(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed);
    return detail::run_cases("twist", o.cases, [&](SuiteResult& r) {
        const auto c = random_intersection_case(rng, o.max_n, o.min_genus, o.max_genus);
        const long long ell_hat = uniform(rng, -2, 2);
        detail::compare(r, intersection_number(c.n, c.g, c.ell, c.e, c.p),
                        intersection_number(c.n, c.g, c.ell + 2 * ell_hat, c.e + c.n * ell_hat, c.p),
                        c.describe() + " l^=" + std::to_string(ell_hat));
    });
}

inline SuiteResult hecke_suite(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    return detail::run_cases("hecke", o.cases, [&](SuiteResult& r) {
        const auto c = random_intersection_case(rng, o.max_n, o.min_genus, o.max_genus);
        const int k = static_cast<int>(uniform(rng, 0, 2));
        detail::compare(r, intersection_number(c.n, c.g, c.ell, c.e, c.p),
                        intersection_number(c.n, c.g, c.ell, c.e - c.n * k, c.p.times(rho(c.n), 2 * k)),
                        c.describe() + " k=" + std::to_string(k));
    });
}

inline SuiteResult rho_insertion_suite(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 2);
    return detail::run_cases("rho-insertion", o.cases, [&](SuiteResult& r) {
        const auto c = random_gw_case(rng, o.max_n, o.min_genus, o.max_genus);
        const int k = static_cast<int>(uniform(rng, 0, 2));
        auto extended = c.insertions;
        extended.insert(extended.end(), static_cast<std::size_t>(2 * k), rho(c.n));
        detail::compare(r, gw_invariant(c.n, c.g, c.d, c.insertions),
                        gw_invariant(c.n, c.g, c.d + static_cast<long long>(k) * c.n, extended),
                        c.describe() + " k=" + std::to_string(k));
    });
}

inline SuiteResult trivial_bundle_suite(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 3);
    return detail::run_cases("trivial-bundle", o.cases, [&](SuiteResult& r) {
        const auto c = random_gw_case(rng, o.max_n, o.min_genus, o.max_genus);
        detail::compare(r, intersection_number(c.n, c.g, 0, -c.d, SchubertExpression::product(c.n, c.insertions)),
                        gw_invariant(c.n, c.g, c.d, c.insertions), c.describe());
    });
}

inline std::vector<SuiteResult> identity_suites(const SuiteOptions& o) {
    return {twist_suite(o), hecke_suite(o), rho_insertion_suite(o), trivial_bundle_suite(o)};
}

/// Builds (or loads) the algebras for ranks 1..max_n once.
inline std::vector<QHAlgebra> algebras_up_to(int max_n) {
    std::vector<QHAlgebra> out;
    const auto dir = cache_dir_from_env();
    for (int n = 1; n <= max_n; ++n) out.push_back(load_or_build(n, dir));
    return out;
}

inline SuiteResult trace_oracle_suite(const SuiteOptions& o, const std::vector<QHAlgebra>& algebras) {
    std::mt19937_64 rng(o.seed + 4);
    const int max_n = std::min<int>(o.max_n, static_cast<int>(algebras.size()));
    return detail::run_cases("trace-oracle", o.cases, [&](SuiteResult& r) {
        const auto c = random_gw_case(rng, max_n, o.min_genus, o.max_genus);
        const Rational tr = trace_invariant(algebras[static_cast<std::size_t>(c.n - 1)], c.g, c.insertions);
        if (tr.get_den() != 1) {
            r.failures.push_back(c.describe() + ": trace " + tr.get_str() + " is not an integer");
            return;
        }
        detail::compare(r, tr.get_num(), gw_invariant(c.n, c.g, c.d, c.insertions), c.describe());
    });
}

inline SuiteResult associativity_suite(const std::vector<QHAlgebra>& algebras) {
    SuiteResult r{"associativity"};
    const detail::Timer t;
    for (const auto& a : algebras) {
        ++r.cases;
        ++r.nontrivial;
        if (!is_associative(a)) r.failures.push_back("n=" + std::to_string(a.rank()) + ": not associative");
    }
    r.elapsed_ms = t.elapsed_ms();
    return r;
}

inline SuiteResult eigenvalue_suite(const std::vector<QHAlgebra>& algebras) {
    SuiteResult r{"eigenvalues"};
    const detail::Timer t;
    for (const auto& a : algebras) {
        ++r.cases;
        ++r.nontrivial;
        if (!eigenvalue_check(a))
            r.failures.push_back("n=" + std::to_string(a.rank()) + ": spectrum differs from Q~ values");
    }
    r.elapsed_ms = t.elapsed_ms();
    return r;
}

inline std::vector<SuiteResult> oracle_suites(const SuiteOptions& o) {
    const auto algebras = algebras_up_to(std::min(o.max_n, 3));
    return {trace_oracle_suite(o, algebras), associativity_suite(algebras), eigenvalue_suite(algebras)};
}

/// |f - x| <= 1e-6 max(1, |x|).
inline bool float_agrees(const Integer& exact, std::complex<double> f) {
    const double x = exact.get_d();
    return std::abs(f - std::complex<double>(x, 0.0)) <= 1e-6 * std::max(1.0, std::abs(x));
}

struct GridResult {
    SuiteResult integrality{"integrality"};
    SuiteResult backends{"backends"};
};

/**
 * Every (n, g, l, e) in the grid with P in {1, alpha_1^D, a random monomial of
 * degree D}: the exact value must extract to an integer, monomial values must
 * be nonnegative, and the float backend must agree.
 */
inline GridResult integrality_grid(const GridOptions& o) {
    GridResult out;
    std::mt19937_64 rng(o.seed + 5);
    const detail::Timer t;
    double float_ms = 0;
    for (int n = 1; n <= o.max_n; ++n) {
        const auto& exact = exact_backend_for_rank(n);
        const auto approx = float_backend_for_rank(n);
        for (int g = 0; g <= o.max_genus; ++g)
            for (int ell : o.ells)
                for (int e = -o.max_abs_e; e <= o.max_abs_e; ++e) {
                    const long long degree = expected_dimension(n, e, ell, g);
                    std::vector<SchubertExpression> polys{SchubertExpression::constant(n, Rational(1))};
                    if (degree > 0) {
                        polys.push_back(SchubertExpression::monomial(n, std::vector<int>(static_cast<std::size_t>(degree), 1)));
                        polys.push_back(random_monomial(rng, n, degree));
                    }
                    for (const auto& p : polys) {
                        const IntersectionCase c{n, g, ell, e, p};
                        ++out.integrality.cases;
                        ++out.backends.cases;
                        try {
                            const Integer v = intersection_number(exact, n, g, ell, e, p);
                            if (v != 0) {
                                ++out.integrality.nontrivial;
                                ++out.backends.nontrivial;
                            }
                            if (v < 0)
                                out.integrality.failures.push_back(c.describe() + ": negative value " + v.get_str());
                            const detail::Timer ft;
                            const auto f = intersection_number_value(approx, n, g, ell, e, p);
                            float_ms += ft.elapsed_ms();
                            if (!float_agrees(v, f))
                                out.backends.failures.push_back(c.describe() + ": exact " + v.get_str() + " vs float " +
                                                                std::to_string(f.real()) + "+" +
                                                                std::to_string(f.imag()) + "i");
                        } catch (const std::exception& ex) {
                            out.integrality.failures.push_back(c.describe() + ": " + ex.what());
                        }
                    }
                }
    }
    out.integrality.elapsed_ms = t.elapsed_ms() - float_ms;
    out.backends.elapsed_ms = float_ms;
    return out;
}

/// Exact vs float for maximal_count on rank 1 (g <= g1) and rank 2 (g <= g2), both parities of l.
inline SuiteResult count_backend_suite(int g1 = 10, int g2 = 8) {
    SuiteResult r{"count-backends"};
    const detail::Timer t;
    auto check = [&](int n, int g, int ell) {
        ++r.cases;
        try {
            const Integer v = maximal_count(exact_backend_for_rank(n), n, g, ell);
            if (v != 0) ++r.nontrivial;
            const auto f = maximal_count_value(float_backend_for_rank(n), n, g, ell);
            if (!float_agrees(v, f))
                r.failures.push_back("count n=" + std::to_string(n) + " g=" + std::to_string(g) + " l=" +
                                     std::to_string(ell) + ": exact " + v.get_str() + " vs float " +
                                     std::to_string(f.real()));
        } catch (const std::exception& ex) {
            r.failures.push_back(ex.what());
        }
    };
    for (int g = 2; g <= g1; ++g) check(1, g, (g % 2 == 0) ? 1 : 0);
    for (int g = 2; g <= g2; ++g)
        for (int ell : {-1, 0}) check(2, g, ell);
    r.elapsed_ms = t.elapsed_ms();
    return r;
}

inline std::vector<SuiteResult> backend_suites(const SuiteOptions& o) {
    GridOptions grid;
    grid.max_n = o.max_n;
    grid.max_genus = o.max_genus;
    grid.seed = o.seed;
    auto g = integrality_grid(grid);
    return {count_backend_suite(), std::move(g.integrality), std::move(g.backends)};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "oracle", "backends", "all"};
    return names;
}

/// Runs a named suite group; throws InvalidArgument for an unknown name.
inline std::vector<SuiteResult> run_suite(const std::string& name, const SuiteOptions& o) {
    if (name == "identities") return identity_suites(o);
    if (name == "oracle") return oracle_suites(o);
    if (name == "backends") return backend_suites(o);
    if (name == "all") {
        auto out = identity_suites(o);
        for (auto* group : {&oracle_suites, &backend_suites}) {
            auto more = (*group)(o);
            for (auto& s : more) out.push_back(std::move(s));
        }
        return out;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "' (identities, oracle, backends, all)");
}

} // namespace lgq::verify
