#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgq/combinatorics.hpp"
#include "lgq/cyclotomic.hpp"
#include "lgq/error.hpp"
#include "lgq/gw_invariants.hpp"
#include "lgq/linalg.hpp"

/**
 * The specialized quantum cohomology ring qH*(LG(n))_{q=1} as a 2^n-dimensional
 * commutative algebra, assembled from genus-0 three-point invariants, plus
 * the trace formula
 *
 *     <s_1, ..., s_m>_{g,d} = tr([E^{g-1} s_1 ... s_m]),
 *
 * with E the quantum Euler class. This is an independent route to the
 * genus-g invariants; all of its arithmetic is exact rational.
 */
namespace lgq {

/// Coefficients in the canonical basis of D(n).
using AlgebraElement = std::vector<Rational>;

/// One term of sigma_lambda * sigma_mu: c q^d sigma_nu.
struct StructureConstant {
    std::size_t nu;
    long long degree;
    Integer value;

    bool operator==(const StructureConstant&) const = default;
};

class QHAlgebra {
public:
    static constexpr int cache_version = 1;

    /// Builds every product from <l, m, nu'>_{0,d} and validates the ring axioms.
    static QHAlgebra build(int n) {
        QHAlgebra a(n);
        const std::size_t dim = a.basis_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                auto& row = a.table_[i * dim + j];
                for (std::size_t k = 0; k < dim; ++k) {
                    const long long num = a.basis_[i].weight() + a.basis_[j].weight() - a.basis_[k].weight();
                    if (num < 0 || num % (n + 1) != 0) continue;
                    const long long d = num / (n + 1);
                    const Integer c =
                        gw_invariant(n, 0, d, {a.basis_[i], a.basis_[j], dual_partition(a.basis_[k])});
                    if (c != 0) row.push_back({k, d, c});
                }
            }
        }
        a.validate();
        return a;
    }

    /// Rebuilds from stored constants; validates the ring axioms.
    static QHAlgebra from_constants(int n, const std::vector<std::tuple<std::size_t, std::size_t, StructureConstant>>& entries) {
        QHAlgebra a(n);
        const std::size_t dim = a.basis_.size();
        for (const auto& [i, j, sc] : entries) {
            if (i >= dim || j >= dim || sc.nu >= dim)
                throw Error(ErrorCode::Cache, "structure constant index out of range");
            a.table_[i * dim + j].push_back(sc);
        }
        a.validate();
        return a;
    }

    int rank() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<StrictPartition>& basis() const noexcept { return basis_; }

    std::size_t index_of(const StrictPartition& lambda) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == lambda) return i;
        throw Error(ErrorCode::InvalidArgument, "partition " + lambda.to_string() + " is not a basis element");
    }

    const std::vector<StructureConstant>& constants(std::size_t i, std::size_t j) const {
        return table_[i * basis_.size() + j];
    }

    AlgebraElement basis_element(std::size_t i) const {
        AlgebraElement v(dimension());
        v[i] = 1;
        return v;
    }

    AlgebraElement basis_element(const StrictPartition& lambda) const { return basis_element(index_of(lambda)); }

    /// Quantum product with q specialized to `q`.
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, const Rational& q = Rational(1)) const {
        const std::size_t dim = dimension();
        AlgebraElement out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (y[j] == 0) continue;
                const Rational xy = x[i] * y[j];
                for (const auto& sc : constants(i, j)) out[sc.nu] += xy * Rational(sc.value) * q_power(q, sc.degree);
            }
        }
        return out;
    }

private:
    explicit QHAlgebra(int n) : n_(n), basis_(strict_partitions(n)), table_(basis_.size() * basis_.size()) {}

    static Rational q_power(const Rational& q, long long d) {
        Rational r = 1;
        for (long long k = 0; k < d; ++k) r *= q;
        return r;
    }

    void validate() const {
        const std::size_t dim = dimension();
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                for (const auto& sc : constants(i, j))
                    if (sc.value < 0)
                        throw Error(ErrorCode::Cache, "negative structure constant for " + basis_[i].to_string() +
                                                          " * " + basis_[j].to_string());
                if (sorted(constants(i, j)) != sorted(constants(j, i)))
                    throw Error(ErrorCode::Cache, "product is not commutative at " + basis_[i].to_string() + ", " +
                                                      basis_[j].to_string());
            }
            const auto& unit = constants(0, i);
            if (unit.size() != 1 || unit[0].nu != i || unit[0].degree != 0 || unit[0].value != 1)
                throw Error(ErrorCode::Cache, "sigma_0 is not a unit on " + basis_[i].to_string());
        }
    }

    static std::vector<StructureConstant> sorted(std::vector<StructureConstant> v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.nu < b.nu; });
        return v;
    }

    int n_;
    std::vector<StrictPartition> basis_;
    std::vector<std::vector<StructureConstant>> table_;
};

/// (s l) s n == s l (s m s n) for every basis triple.
inline bool is_associative(const QHAlgebra& a) {
    const std::size_t dim = a.dimension();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                const auto x = a.basis_element(i), y = a.basis_element(j), z = a.basis_element(k);
                if (a.multiply(a.multiply(x, y), z) != a.multiply(x, a.multiply(y, z))) return false;
            }
    return true;
}

/// Matrix of y -> x * y; column lambda is the expansion of x * sigma_lambda.
inline Matrix<Rational> mult_operator(const QHAlgebra& a, const AlgebraElement& x, const Rational& q = Rational(1)) {
    const std::size_t dim = a.dimension();
    Matrix<Rational> m(dim, dim, Rational(0));
    for (std::size_t j = 0; j < dim; ++j) {
        const auto col = a.multiply(x, a.basis_element(j), q);
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i];
    }
    return m;
}

/// E = sum_lambda sigma_lambda * sigma_{lambda'}.
inline AlgebraElement quantum_euler(const QHAlgebra& a) {
    AlgebraElement e(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const auto term = a.multiply(a.basis_element(i), a.basis_element(dual_partition(a.basis()[i])));
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += term[k];
    }
    return e;
}

inline Matrix<Rational> matmul(const Matrix<Rational>& x, const Matrix<Rational>& y) {
    Matrix<Rational> out(x.rows(), y.cols(), Rational(0));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

inline Matrix<Rational> identity_matrix(std::size_t dim) {
    Matrix<Rational> m(dim, dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<Matrix<Rational>> inverse(Matrix<Rational> m) {
    const std::size_t dim = m.rows();
    Matrix<Rational> inv = identity_matrix(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t piv = c;
        while (piv < dim && m(piv, c) == 0) ++piv;
        if (piv == dim) return std::nullopt;
        if (piv != c)
            for (std::size_t k = 0; k < dim; ++k) {
                std::swap(m(c, k), m(piv, k));
                std::swap(inv(c, k), inv(piv, k));
            }
        const Rational s = 1 / m(c, c);
        for (std::size_t k = 0; k < dim; ++k) {
            m(c, k) *= s;
            inv(c, k) *= s;
        }
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Rational f = m(r, c);
            for (std::size_t k = 0; k < dim; ++k) {
                m(r, k) -= f * m(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

inline Matrix<Rational> matrix_power(const Matrix<Rational>& m, long long e) {
    Matrix<Rational> base = m;
    if (e < 0) {
        auto inv = inverse(m);
        if (!inv) throw Error(ErrorCode::SingularEuler, "matrix is singular");
        base = std::move(*inv);
        e = -e;
    }
    Matrix<Rational> acc = identity_matrix(m.rows());
    while (e) {
        if (e & 1) acc = matmul(acc, base);
        e >>= 1;
        if (e) base = matmul(base, base);
    }
    return acc;
}

/// tr([E]^{g-1} prod [sigma_{lambda^i}]); genus 0 needs [E] invertible.
inline Rational trace_invariant(const QHAlgebra& a, long long g, const std::vector<StrictPartition>& insertions) {
    if (g < 0) throw Error(ErrorCode::InvalidArgument, "genus must be nonnegative");
    const auto euler = mult_operator(a, quantum_euler(a));
    Matrix<Rational> m = identity_matrix(a.dimension());
    if (g == 0) {
        auto inv = inverse(euler);
        if (!inv) throw Error(ErrorCode::SingularEuler, "quantum Euler operator is singular");
        m = std::move(*inv);
    } else {
        m = matrix_power(euler, g - 1);
    }
    for (const auto& l : insertions) m = matmul(m, mult_operator(a, a.basis_element(l)));
    Rational tr = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) tr += m(i, i);
    return tr;
}

/// det(x I - [sigma_lambda]) at the given q, constant term first.
inline std::vector<Rational> operator_characteristic_polynomial(const QHAlgebra& a, const StrictPartition& lambda,
                                                                const Rational& q) {
    return characteristic_polynomial(mult_operator(a, a.basis_element(lambda), q), Rational(0), Rational(1));
}

/// prod_{J in I_{n+1}^e} (x - Q~_lambda(z^J)) in Q(zeta_M)[x], constant term first.
inline std::vector<Cyclotomic> eigenvalue_polynomial(int n, const StrictPartition& lambda) {
    const auto& b = exact_backend_for_rank(n);
    std::vector<Cyclotomic> poly{b.one()};
    for (const auto& J : summation_points_cached(n)) {
        const auto x = realize_point(b, J);
        const auto root = qtilde(b, lambda.as_partition(), std::span<const Cyclotomic>(x));
        std::vector<Cyclotomic> next(poly.size() + 1, b.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= root * poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

/**
 * For every basis class, compares the characteristic polynomial of
 * [sigma_lambda] with prod_J (x - Q~_lambda(z^J)), exactly.
 *
 * At q = 1 the eigenvalues are 2^{-|lambda|/(n+1)} Q~_lambda(z^J), which do
 * not live in Q(zeta_M). Rescaling q to 2 removes the factor, so the
 * operators are taken at q = 2.
 */
inline bool eigenvalue_check(const QHAlgebra& a) {
    const Rational q(2);
    for (const auto& lambda : a.basis()) {
        const auto lhs = operator_characteristic_polynomial(a, lambda, q);
        const auto rhs = eigenvalue_polynomial(a.rank(), lambda);
        if (lhs.size() != rhs.size()) return false;
        for (std::size_t k = 0; k < lhs.size(); ++k) {
            if (!rhs[k].is_rational() || rhs[k].coeffs()[0] != lhs[k]) return false;
        }
    }
    return true;
}

// Structure-constant cache: versioned JSON with decimal-string integers.
//
//   {"format": "lgq-structure-constants", "version": 1, "n": 2,
//    "basis": [[], [1], [2], [2, 1]],
//    "constants": [{"lambda": [1], "mu": [1], "nu": [2], "d": "0", "c": "2"}, ...]}

inline constexpr const char* cache_format_tag = "lgq-structure-constants";

inline nlohmann::ordered_json cache_to_json(const QHAlgebra& a) {
    nlohmann::ordered_json j;
    j["format"] = cache_format_tag;
    j["version"] = QHAlgebra::cache_version;
    j["n"] = a.rank();
    auto basis = nlohmann::ordered_json::array();
    for (const auto& l : a.basis()) basis.push_back(l.parts());
    j["basis"] = basis;
    auto constants = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t k = 0; k < a.dimension(); ++k)
            for (const auto& sc : a.constants(i, k)) {
                nlohmann::ordered_json e;
                e["lambda"] = a.basis()[i].parts();
                e["mu"] = a.basis()[k].parts();
                e["nu"] = a.basis()[sc.nu].parts();
                e["d"] = std::to_string(sc.degree);
                e["c"] = sc.value.get_str();
                constants.push_back(std::move(e));
            }
    j["constants"] = constants;
    return j;
}

/// Parses a cache document; nullopt on a format, version, rank or basis mismatch.
inline std::optional<QHAlgebra> cache_from_json(const nlohmann::json& j, int n) {
    try {
        if (j.at("format").get<std::string>() != cache_format_tag) return std::nullopt;
        if (j.at("version").get<int>() != QHAlgebra::cache_version) return std::nullopt;
        if (j.at("n").get<int>() != n) return std::nullopt;
        const auto basis = strict_partitions(n);
        const auto stored = j.at("basis");
        if (stored.size() != basis.size()) return std::nullopt;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (stored[i].get<std::vector<int>>() != basis[i].parts()) return std::nullopt;

        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i].parts()] = i;
        auto lookup = [&](const nlohmann::json& p) {
            auto it = index.find(p.get<std::vector<int>>());
            if (it == index.end()) throw Error(ErrorCode::Cache, "unknown partition in cache");
            return it->second;
        };
        std::vector<std::tuple<std::size_t, std::size_t, StructureConstant>> entries;
        for (const auto& e : j.at("constants")) {
            StructureConstant sc{lookup(e.at("nu")), std::stoll(e.at("d").get<std::string>()),
                                 Integer(e.at("c").get<std::string>())};
            entries.emplace_back(lookup(e.at("lambda")), lookup(e.at("mu")), std::move(sc));
        }
        return QHAlgebra::from_constants(n, entries);
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir, int n) {
    return dir / ("lgq_qh_n" + std::to_string(n) + "_v" + std::to_string(QHAlgebra::cache_version) + ".json");
}

inline void save_cache(const QHAlgebra& a, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = cache_path(dir, a.rank());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error(ErrorCode::Cache, "cannot write " + tmp);
        out << cache_to_json(a).dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<QHAlgebra> load_cache(const std::filesystem::path& dir, int n) {
    std::ifstream in(cache_path(dir, n));
    if (!in) return std::nullopt;
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return cache_from_json(j, n);
}

/// Loads from `dir` when a valid cache exists, otherwise builds and stores it.
inline QHAlgebra load_or_build(int n, const std::optional<std::filesystem::path>& dir) {
    if (dir) {
        if (auto cached = load_cache(*dir, n)) return std::move(*cached);
    }
    QHAlgebra a = QHAlgebra::build(n);
    if (dir) save_cache(a, *dir);
    return a;
}

/// $LGQ_CACHE_DIR, if set and nonempty.
inline std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* env = std::getenv("LGQ_CACHE_DIR");
    if (!env || !*env) return std::nullopt;
    return std::filesystem::path(env);
}

} // namespace lgq
