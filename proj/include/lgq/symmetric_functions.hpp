#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "lgq/combinatorics.hpp"
#include "lgq/error.hpp"
#include "lgq/linalg.hpp"

/**
 * Symmetric functions evaluated at a tuple of backend numbers. Schur
 * polynomials come from the Jacobi-Trudi determinant; the type C Q-tilde
 * polynomials are Pfaffians of pairwise values.
 *
 * Functions are templated on a number backend (see cyclotomic.hpp) that
 * supplies zero(), one() and the value type's ring operations.
 */
namespace lgq {

template <class Backend>
using value_of = typename Backend::value_type;

/// E_0, ..., E_N: coefficients of prod (1 + x_i t).
template <class Backend>
std::vector<value_of<Backend>> elementary_all(const Backend& b, std::span<const value_of<Backend>> point) {
    std::vector<value_of<Backend>> e(point.size() + 1, b.zero());
    e[0] = b.one();
    for (std::size_t i = 0; i < point.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] = e[k] + point[i] * e[k - 1];
    return e;
}

/// H_0, ..., H_upto from E-values via sum_{i=0}^{k} (-1)^i E_i H_{k-i} = 0.
template <class Backend>
std::vector<value_of<Backend>> complete_from_elementary(const Backend& b,
                                                        std::span<const value_of<Backend>> e, int upto) {
    std::vector<value_of<Backend>> h;
    if (upto < 0) return h;
    h.reserve(static_cast<std::size_t>(upto) + 1);
    h.push_back(b.one());
    const std::size_t nvars = e.size() - 1;
    for (int k = 1; k <= upto; ++k) {
        auto s = b.zero();
        for (std::size_t i = 1; i <= std::min<std::size_t>(static_cast<std::size_t>(k), nvars); ++i) {
            const auto term = e[i] * h[static_cast<std::size_t>(k) - i];
            if (i % 2 == 1)
                s = s + term;
            else
                s = s - term;
        }
        h.push_back(s);
    }
    return h;
}

template <class Backend>
std::vector<value_of<Backend>> complete_all(const Backend& b, std::span<const value_of<Backend>> point, int upto) {
    const auto e = elementary_all(b, point);
    return complete_from_elementary(b, std::span<const value_of<Backend>>(e), upto);
}

/// E_k with the convention E_k = 0 outside 0..N.
template <class Backend>
value_of<Backend> elementary_at(const Backend& b, std::span<const value_of<Backend>> e, int k) {
    if (k < 0 || static_cast<std::size_t>(k) >= e.size()) return b.zero();
    return e[static_cast<std::size_t>(k)];
}

/// det[H_{lambda_i + j - i}] of size `size`; lambda is zero-padded.
template <class Backend>
value_of<Backend> jacobi_trudi(const Backend& b, const Partition& lambda,
                               std::span<const value_of<Backend>> h, std::size_t size) {
    Matrix<value_of<Backend>> m(size, size, b.zero());
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            const long idx = static_cast<long>(lambda[i]) + static_cast<long>(j) - static_cast<long>(i);
            if (idx >= 0) {
                if (static_cast<std::size_t>(idx) >= h.size())
                    throw std::out_of_range("complete symmetric table too short for Jacobi-Trudi");
                m(i, j) = h[static_cast<std::size_t>(idx)];
            }
        }
    }
    return determinant(m, b.zero(), b.one());
}

/// S_lambda at the point, as an N x N Jacobi-Trudi determinant with N = point size.
template <class Backend>
value_of<Backend> schur(const Backend& b, const Partition& lambda, std::span<const value_of<Backend>> point) {
    const std::size_t nvars = point.size();
    if (static_cast<std::size_t>(lambda.length()) > nvars) return b.zero();
    const int hmax = lambda[0] + static_cast<int>(nvars);
    const auto h = complete_all(b, point, hmax);
    return jacobi_trudi(b, lambda, std::span<const value_of<Backend>>(h), nvars);
}

/// Q~_{i,j} = E_i E_j + 2 sum_{k=1}^{j} (-1)^k E_{i+k} E_{j-k}; requires i >= j >= 0.
template <class Backend>
value_of<Backend> qtilde_pair(const Backend& b, int i, int j, std::span<const value_of<Backend>> e) {
    if (j < 0 || i < j)
        throw Error(ErrorCode::InvalidArgument,
                    "qtilde_pair needs i >= j >= 0, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
    auto sum = b.zero();
    for (int k = 1; k <= j; ++k) {
        const auto term = elementary_at(b, e, i + k) * elementary_at(b, e, j - k);
        if (k % 2 == 1)
            sum = sum - term;
        else
            sum = sum + term;
    }
    return elementary_at(b, e, i) * elementary_at(b, e, j) + sum + sum;
}

/// Even-sized skew-symmetric matrix, stored by its strictly-upper entries.
template <class T>
class SkewMatrix {
public:
    SkewMatrix(std::size_t size, const T& zero) : size_(size), upper_(size * size, zero) {
        if (size % 2 != 0) throw Error(ErrorCode::InvalidArgument, "Pfaffian needs an even-sized matrix");
    }

    std::size_t size() const noexcept { return size_; }
    void set(std::size_t i, std::size_t j, const T& v) {
        if (i >= j) throw std::invalid_argument("SkewMatrix::set takes i < j");
        upper_[i * size_ + j] = v;
    }
    const T& upper(std::size_t i, std::size_t j) const { return upper_[i * size_ + j]; }

private:
    std::size_t size_;
    std::vector<T> upper_;
};

namespace detail {

template <class T>
T pfaffian_rec(const SkewMatrix<T>& a, std::vector<std::size_t>& idx, const T& zero, const T& one) {
    if (idx.empty()) return one;
    const std::size_t first = idx.front();
    T total = zero;
    for (std::size_t pos = 1; pos < idx.size(); ++pos) {
        const T& entry = a.upper(first, idx[pos]);
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t q = 1; q < idx.size(); ++q)
            if (q != pos) rest.push_back(idx[q]);
        const T minor = pfaffian_rec(a, rest, zero, one);
        // Sign (-1)^(pos+1) with pos 0-based relative to the remaining indices.
        if (pos % 2 == 1)
            total = total + entry * minor;
        else
            total = total - entry * minor;
    }
    return total;
}

} // namespace detail

/// Pf(A) by recursive expansion along the first row; division-free.
template <class T>
T pfaffian(const SkewMatrix<T>& a, const T& zero, const T& one) {
    std::vector<std::size_t> idx(a.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return detail::pfaffian_rec(a, idx, zero, one);
}

/// Q~_lambda from E-values: E_{lambda_1} for length <= 1, else Pf(B_lambda).
template <class Backend>
value_of<Backend> qtilde_from_elementary(const Backend& b, const Partition& lambda,
                                         std::span<const value_of<Backend>> e) {
    if (lambda.length() <= 1) return elementary_at(b, e, lambda[0]);
    const auto r = static_cast<std::size_t>(2 * ((lambda.length() + 1) / 2));
    SkewMatrix<value_of<Backend>> m(r, b.zero());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) m.set(i, j, qtilde_pair(b, lambda[i], lambda[j], e));
    return pfaffian(m, b.zero(), b.one());
}

template <class Backend>
value_of<Backend> qtilde(const Backend& b, const Partition& lambda, std::span<const value_of<Backend>> point) {
    const auto e = elementary_all(b, point);
    return qtilde_from_elementary(b, lambda, std::span<const value_of<Backend>>(e));
}

/// zeta^J realized in the backend: x_k = zeta_{4N}^{doubled_k}, with 4N | M.
template <class Backend>
std::vector<value_of<Backend>> realize_point(const Backend& b, const IndexTuple& J) {
    const int base = 4 * J.N;
    if (b.order() % base != 0)
        throw Error(ErrorCode::InvalidArgument, "backend order " + std::to_string(b.order()) +
                                                    " does not contain zeta_" + std::to_string(base));
    const long long step = b.order() / base;
    std::vector<value_of<Backend>> x;
    x.reserve(J.doubled.size());
    for (int d : J.doubled) x.push_back(b.root_of_unity(step * d));
    return x;
}

/**
 * Memoized symmetric-function values at one point. E-values, complete
 * functions, Q~ pairs and Q~_lambda are computed once and reused across the
 * factors of a summand. Not thread-safe; use one evaluator per thread.
 */
template <class Backend>
class PointEvaluator {
public:
    using value_type = value_of<Backend>;

    PointEvaluator(const Backend& b, std::vector<value_type> point)
        : backend_(&b), point_(std::move(point)), e_(elementary_all(b, std::span<const value_type>(point_))) {}

    std::size_t size() const noexcept { return point_.size(); }
    const std::vector<value_type>& point() const noexcept { return point_; }
    const std::vector<value_type>& elementary() const noexcept { return e_; }

    value_type elementary(int k) const { return elementary_at(*backend_, std::span<const value_type>(e_), k); }

    const value_type& complete(int k) {
        if (k < 0) throw std::out_of_range("complete symmetric index must be nonnegative");
        if (static_cast<std::size_t>(k) >= h_.size())
            h_ = complete_from_elementary(*backend_, std::span<const value_type>(e_), std::max(k, 2 * static_cast<int>(h_.size())));
        return h_[static_cast<std::size_t>(k)];
    }

    const value_type& schur(const Partition& lambda) {
        auto it = schur_cache_.find(lambda.parts());
        if (it != schur_cache_.end()) return it->second;
        value_type v = backend_->zero();
        if (static_cast<std::size_t>(lambda.length()) <= point_.size()) {
            complete(lambda[0] + static_cast<int>(point_.size()));
            v = jacobi_trudi(*backend_, lambda, std::span<const value_type>(h_), point_.size());
        }
        return schur_cache_.emplace(lambda.parts(), std::move(v)).first->second;
    }

    const value_type& qtilde(const Partition& lambda) {
        auto it = qtilde_cache_.find(lambda.parts());
        if (it != qtilde_cache_.end()) return it->second;
        value_type v = qtilde_from_elementary(*backend_, lambda, std::span<const value_type>(e_));
        return qtilde_cache_.emplace(lambda.parts(), std::move(v)).first->second;
    }

private:
    const Backend* backend_;
    std::vector<value_type> point_;
    std::vector<value_type> e_;
    std::vector<value_type> h_;
    std::map<std::vector<int>, value_type> schur_cache_;
    std::map<std::vector<int>, value_type> qtilde_cache_;
};

} // namespace lgq
