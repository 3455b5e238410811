#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lgq {

/// Dense row-major matrix over any commutative ring with value semantics.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/**
 * Coefficients of det(x I - A), constant term first, by the Samuelson-Berkowitz
 * recursion. Division-free, so it works over any commutative ring.
 */
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a, const T& zero, const T& one) {
    if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
    const std::size_t n = a.rows();

    // Peel off the leading row/column; p holds coefficients highest degree first.
    // Start from the trailing 1x1 block and grow outward.
    std::vector<T> p{one};
    for (std::size_t k = n; k-- > 0;) {
        // Block is rows/cols k..n-1; head a(k,k), row R = a(k, k+1..), column C = a(k+1.., k),
        // tail B = a(k+1.., k+1..) of size m.
        const std::size_t m = n - 1 - k;
        std::vector<T> t;
        t.reserve(m + 2);
        t.push_back(one);
        t.push_back(zero - a(k, k));
        // v = B^j C, starting from C.
        std::vector<T> v(m, zero);
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        for (std::size_t j = 0; j < m; ++j) {
            T dot = zero;
            for (std::size_t i = 0; i < m; ++i) dot = dot + a(k, k + 1 + i) * v[i];
            t.push_back(zero - dot);
            if (j + 1 < m) {
                std::vector<T> next(m, zero);
                for (std::size_t r = 0; r < m; ++r) {
                    T s = zero;
                    for (std::size_t c = 0; c < m; ++c) s = s + a(k + 1 + r, k + 1 + c) * v[c];
                    next[r] = s;
                }
                v = std::move(next);
            }
        }
        // p_new = T * p with T the (m+2) x (m+1) lower-triangular Toeplitz matrix on t.
        std::vector<T> q(m + 2, zero);
        for (std::size_t i = 0; i < m + 2; ++i)
            for (std::size_t j = 0; j <= i && j < m + 1; ++j) q[i] = q[i] + t[i - j] * p[j];
        p = std::move(q);
    }
    return std::vector<T>(p.rbegin(), p.rend());
}

template <class T>
T determinant(const Matrix<T>& a, const T& zero, const T& one) {
    const auto cp = characteristic_polynomial(a, zero, one);
    T c0 = cp.front();
    if (a.rows() % 2 == 1) c0 = zero - c0;
    return c0;
}

} // namespace lgq
