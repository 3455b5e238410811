#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lgq/combinatorics.hpp"
#include "lgq/cyclotomic.hpp"
#include "lgq/error.hpp"
#include "lgq/symmetric_functions.hpp"

/**
 * Root-of-unity formulas for LG(n). The genus-g Gromov-Witten invariant is
 *
 *     <s_1, ..., s_m>_{g,d} = 2^{n(g-1)-d} sum_J S_rho(z^J)^{g-1} prod_i Q~_{l^i}(z^J),
 *
 * with J over I_{n+1}^e and z = exp(pi i / (n+1)). Intersection numbers on
 * Lagrangian Quot schemes and the maximal subbundle counts are sums of the
 * same shape. Each sum is a map-reduce over the summation points.
 */
namespace lgq {

/// A polynomial in the classes: sum of coefficient * product of Q~_lambda factors.
/// The variable alpha_k is the factor (k).
struct SchubertTerm {
    Rational coefficient;
    std::vector<StrictPartition> factors;

    int weighted_degree() const {
        int d = 0;
        for (const auto& f : factors) d += f.weight();
        return d;
    }
};

class SchubertExpression {
public:
    SchubertExpression() = default;
    SchubertExpression(int n, std::vector<SchubertTerm> terms) : n_(n), terms_(std::move(terms)) {
        for (const auto& t : terms_)
            for (const auto& f : t.factors)
                if (f.rank() != n_)
                    throw Error(ErrorCode::InvalidArgument, "factor " + f.to_string() + " has rank " +
                                                                std::to_string(f.rank()) + ", expected " +
                                                                std::to_string(n_));
    }

    static SchubertExpression constant(int n, const Rational& c) { return {n, {SchubertTerm{c, {}}}}; }

    /// prod_i Q~_{lambda^i}.
    static SchubertExpression product(int n, std::vector<StrictPartition> factors) {
        return {n, {SchubertTerm{Rational(1), std::move(factors)}}};
    }

    /// alpha_{k_1} * ... * alpha_{k_s}.
    static SchubertExpression monomial(int n, const std::vector<int>& variables) {
        std::vector<StrictPartition> factors;
        factors.reserve(variables.size());
        for (int k : variables) factors.emplace_back(n, std::vector<int>{k});
        return product(n, std::move(factors));
    }

    int rank() const noexcept { return n_; }
    const std::vector<SchubertTerm>& terms() const noexcept { return terms_; }

    /// Common weighted degree; nullopt for the zero polynomial. Throws NonHomogeneous.
    std::optional<int> weighted_degree() const {
        std::optional<int> deg;
        for (const auto& t : terms_) {
            if (t.coefficient == 0) continue;
            const int d = t.weighted_degree();
            if (deg && *deg != d)
                throw Error(ErrorCode::NonHomogeneous, "polynomial mixes weighted degrees " +
                                                           std::to_string(*deg) + " and " + std::to_string(d));
            deg = d;
        }
        return deg;
    }

    /// This polynomial times prod of `copies` factors of `factor`.
    SchubertExpression times(const StrictPartition& factor, int copies) const {
        SchubertExpression out = *this;
        for (auto& t : out.terms_)
            for (int i = 0; i < copies; ++i) t.factors.push_back(factor);
        return out;
    }

private:
    int n_ = 1;
    std::vector<SchubertTerm> terms_;
};

/// D(n, e, l) = -(n+1)e - n(n+1)/2 (g - 1 - l).
inline long long expected_dimension(int n, long long e, long long ell, long long g) {
    const long long nn = n;
    return -(nn + 1) * e - nn * (nn + 1) / 2 * (g - 1 - ell);
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

/// e_0 = ceil(-n(g - 1 - l) / 2), the degree of a maximal Lagrangian subbundle.
inline long long maximal_degree_e0(int n, long long g, long long ell) {
    return ceil_div(-static_cast<long long>(n) * (g - 1 - ell), 2);
}

/// The unique d >= 0 with sum |lambda^j| = n(n+1)(1-g)/2 + d(n+1), if any.
inline std::optional<long long> dimension_condition(int n, long long g, const std::vector<StrictPartition>& insertions) {
    long long total = 0;
    for (const auto& l : insertions) total += l.weight();
    const long long nn = n;
    // 2*total = n(n+1)(1-g) + 2d(n+1)
    const long long num = 2 * total - nn * (nn + 1) * (1 - g);
    const long long den = 2 * (nn + 1);
    if (num % den != 0) return std::nullopt;
    const long long d = num / den;
    if (d < 0) return std::nullopt;
    return d;
}

/// Exact 2^k for any integer k.
inline Rational power_of_two(long long k) {
    Integer p = 1;
    p <<= static_cast<mp_bitcnt_t>(k < 0 ? -k : k);
    return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

/// I_{n+1}^e, memoized per rank.
inline const std::vector<IndexTuple>& summation_points_cached(int n) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const std::vector<IndexTuple>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const std::vector<IndexTuple>>(summation_points(n));
    return *slot;
}

/// Shared exact backend for Q(zeta_M), M = working_order(n).
inline const ExactBackend& exact_backend_for_rank(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ExactBackend>> cache;
    const int order = working_order(n);
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<ExactBackend>(order);
    return *slot;
}

inline FloatBackend float_backend_for_rank(int n) { return FloatBackend(working_order(n)); }

/// Worker count for the point sums; LGQ_THREADS overrides.
inline unsigned summation_threads() {
    if (const char* env = std::getenv("LGQ_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * sum_{J in I_{n+1}^e} summand(evaluator at z^J).
 *
 * Points are split into fixed chunks whose partial sums are combined in chunk
 * order, so the float result does not depend on the thread count.
 */
template <class Backend, class Summand>
value_of<Backend> sum_over_points(const Backend& b, int n, Summand&& summand) {
    const auto& points = summation_points_cached(n);
    constexpr std::size_t chunk = 8;
    const std::size_t chunks = (points.size() + chunk - 1) / chunk;
    std::vector<value_of<Backend>> partial(chunks, b.zero());
    std::vector<std::exception_ptr> failures(chunks);

    auto run_chunk = [&](std::size_t c) {
        try {
            auto acc = b.zero();
            const std::size_t end = std::min(points.size(), (c + 1) * chunk);
            for (std::size_t i = c * chunk; i < end; ++i) {
                PointEvaluator<Backend> ev(b, realize_point(b, points[i]));
                acc = acc + summand(ev);
            }
            partial[c] = std::move(acc);
        } catch (...) {
            failures[c] = std::current_exception();
        }
    };

    const unsigned workers = std::min<unsigned>(summation_threads(), static_cast<unsigned>(chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
            });
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    auto total = b.zero();
    for (auto& p : partial) total = total + p;
    return total;
}

namespace detail {

template <class Backend>
value_of<Backend> schur_rho_power(PointEvaluator<Backend>& ev, int n, long long exponent) {
    const auto& s = ev.schur(rho(n).as_partition());
    if (exponent < 0 && Backend::is_zero(s))
        throw Error(ErrorCode::Nonvanishing, "S_rho vanishes at a summation point; negative power undefined");
    return Backend::pow(s, exponent);
}

inline void check_insertions(int n, const std::vector<StrictPartition>& insertions) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
    for (const auto& l : insertions)
        if (l.rank() != n)
            throw Error(ErrorCode::InvalidArgument,
                        "insertion " + l.to_string() + " is not in D(" + std::to_string(n) + ")");
}

template <class Backend>
value_of<Backend> evaluate_expression(const Backend& b, PointEvaluator<Backend>& ev, const SchubertExpression& p) {
    auto total = b.zero();
    for (const auto& t : p.terms()) {
        if (t.coefficient == 0) continue;
        auto v = b.from_rational(t.coefficient);
        for (const auto& f : t.factors) v = v * ev.qtilde(f.as_partition());
        total = total + v;
    }
    return total;
}

} // namespace detail

/// Unextracted value of the genus-g invariant; zero when the dimension condition fails or d < 0.
template <class Backend>
value_of<Backend> gw_invariant_value(const Backend& b, int n, long long g, long long d,
                                     const std::vector<StrictPartition>& insertions) {
    detail::check_insertions(n, insertions);
    if (g < 0) throw Error(ErrorCode::InvalidArgument, "genus must be nonnegative");
    if (d < 0) return b.zero();
    const auto solved = dimension_condition(n, g, insertions);
    if (!solved || *solved != d) return b.zero();

    auto sum = sum_over_points(b, n, [&](PointEvaluator<Backend>& ev) {
        auto v = detail::schur_rho_power(ev, n, g - 1);
        for (const auto& l : insertions) v = v * ev.qtilde(l.as_partition());
        return v;
    });
    return sum * b.from_rational(power_of_two(static_cast<long long>(n) * (g - 1) - d));
}

template <class Backend>
Integer gw_invariant(const Backend& b, int n, long long g, long long d, const std::vector<StrictPartition>& insertions) {
    return Backend::extract_integer(gw_invariant_value(b, n, g, d, insertions));
}

inline Integer gw_invariant(int n, long long g, long long d, const std::vector<StrictPartition>& insertions) {
    return gw_invariant(exact_backend_for_rank(n), n, g, d, insertions);
}

/// The integer m with l = 2m (l even) or l = 2m - 1 (l odd).
inline long long half_ell(long long ell) { return (ell % 2 == 0) ? ell / 2 : (ell + 1) / 2; }

/// Unextracted N~ for a bundle of degree n*l; zero when deg P != D(n, e, l).
template <class Backend>
value_of<Backend> intersection_number_value(const Backend& b, int n, long long g, long long ell, long long e,
                                            const SchubertExpression& p) {
    if (g < 0) throw Error(ErrorCode::InvalidArgument, "genus must be nonnegative");
    if (p.rank() != n) throw Error(ErrorCode::InvalidArgument, "polynomial rank does not match n");
    const auto deg = p.weighted_degree();
    if (!deg || *deg != expected_dimension(n, e, ell, g)) return b.zero();

    const bool odd = (ell % 2 != 0);
    const long long m = half_ell(ell);
    const StrictPartition staircase = rho(n);

    auto sum = sum_over_points(b, n, [&](PointEvaluator<Backend>& ev) {
        auto v = detail::schur_rho_power(ev, n, g - 1);
        if (odd) v = v * ev.qtilde(staircase.as_partition());
        return v * detail::evaluate_expression(b, ev, p);
    });
    const long long a_exp = static_cast<long long>(n) * (g - 1) + e - m * n;
    return sum * b.from_rational(power_of_two(a_exp));
}

template <class Backend>
Integer intersection_number(const Backend& b, int n, long long g, long long ell, long long e,
                            const SchubertExpression& p) {
    return Backend::extract_integer(intersection_number_value(b, n, g, ell, e, p));
}

inline Integer intersection_number(int n, long long g, long long ell, long long e, const SchubertExpression& p) {
    return intersection_number(exact_backend_for_rank(n), n, g, ell, e, p);
}

/// e = n(l - g + 1)/2; throws Parity when n(l - g + 1) is odd.
inline long long maximal_count_degree(int n, long long g, long long ell) {
    const long long t = static_cast<long long>(n) * (ell - g + 1);
    if (t % 2 != 0)
        throw Error(ErrorCode::Parity, "n(l - g + 1) = " + std::to_string(t) + " is odd; no finite maximal count");
    return t / 2;
}

/**
 * N(g, n, l, e): B sum_J S_rho(z^J)^{g-1} [Q~_rho(z^J) if l odd], with
 * B = sqrt2^{n(g-1)} for even l and sqrt2^{n(g-2)} for odd l.
 */
template <class Backend>
value_of<Backend> maximal_count_value(const Backend& b, int n, long long g, long long ell) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
    if (g < 0) throw Error(ErrorCode::InvalidArgument, "genus must be nonnegative");
    maximal_count_degree(n, g, ell);
    const bool odd = (ell % 2 != 0);
    const StrictPartition staircase = rho(n);

    auto sum = sum_over_points(b, n, [&](PointEvaluator<Backend>& ev) {
        auto v = detail::schur_rho_power(ev, n, g - 1);
        if (odd) v = v * ev.qtilde(staircase.as_partition());
        return v;
    });
    const long long sqrt2_exp = static_cast<long long>(n) * (odd ? g - 2 : g - 1);
    return sum * Backend::pow(b.sqrt2(), sqrt2_exp);
}

template <class Backend>
Integer maximal_count(const Backend& b, int n, long long g, long long ell) {
    return Backend::extract_integer(maximal_count_value(b, n, g, ell));
}

inline Integer maximal_count(int n, long long g, long long ell) {
    return maximal_count(exact_backend_for_rank(n), n, g, ell);
}

/// N~_{e}^{w}(P) == N~_{e + n lh}^{w + 2n lh}(P).
inline bool verify_twist_identity(int n, long long g, long long ell, long long e, const SchubertExpression& p,
                                  long long ell_hat) {
    return intersection_number(n, g, ell, e, p) == intersection_number(n, g, ell + 2 * ell_hat, e + n * ell_hat, p);
}

/// N~_e(P) == N~_{e - nk}(P * Q~_rho^{2k}).
inline bool verify_hecke_recursion(int n, long long g, long long ell, long long e, const SchubertExpression& p, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    return intersection_number(n, g, ell, e, p) == intersection_number(n, g, ell, e - n * k, p.times(rho(n), 2 * k));
}

/// <l's>_{g,d} == <rho^{2k}, l's>_{g, d + kn}.
inline bool verify_rho_insertion(int n, long long g, long long d, const std::vector<StrictPartition>& insertions, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    std::vector<StrictPartition> extended(static_cast<std::size_t>(2 * k), rho(n));
    extended.insert(extended.end(), insertions.begin(), insertions.end());
    return gw_invariant(n, g, d, insertions) == gw_invariant(n, g, d + static_cast<long long>(k) * n, extended);
}

/// N~^0_e(prod Q~_{l^i}) == <l's>_{g,|e|} for the trivial bundle (l = 0); e <= 0.
inline bool verify_trivial_bundle(int n, long long g, long long e, const std::vector<StrictPartition>& insertions) {
    if (e > 0) throw Error(ErrorCode::InvalidArgument, "trivial-bundle equality needs e <= 0");
    const long long d = -e;
    return intersection_number(n, g, 0, e, SchubertExpression::product(n, insertions)) ==
           gw_invariant(n, g, d, insertions);
}

} // namespace lgq
