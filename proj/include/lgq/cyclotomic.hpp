#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lgq/error.hpp"

/**
 * Exact arithmetic in the cyclotomic field Q(zeta_M).
 *
 * Elements are dense rational coefficient vectors modulo the M-th cyclotomic
 * polynomial, so every nonzero element is invertible. Coefficients are GMP
 * rationals; the field data (Phi_M and the reduction table of x^k) is shared
 * between all elements of one field.
 */
namespace lgq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<Integer>;

inline int euler_phi(int m) {
    int result = m;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

/// Quotient of num by a monic divisor; throws if the division is not exact.
inline IntPoly divide_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    if (den.back() != 1) throw Error(ErrorCode::InvalidArgument, "divisor must be monic");
    if (num.size() < den.size()) throw Error(ErrorCode::InvalidArgument, "polynomial division is not exact");
    IntPoly quot(num.size() - dn);
    for (std::size_t k = num.size(); k-- > dn;) {
        const Integer c = num[k];
        quot[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    for (const auto& r : num)
        if (r != 0) throw Error(ErrorCode::InvalidArgument, "polynomial division is not exact");
    return quot;
}

/// Phi_M, obtained from x^M - 1 by dividing out Phi_d for every proper divisor d.
inline IntPoly cyclotomic_polynomial(int M) {
    if (M < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
    IntPoly poly(static_cast<std::size_t>(M) + 1);
    poly[0] = -1;
    poly[static_cast<std::size_t>(M)] = 1;
    for (int d = 1; d < M; ++d)
        if (M % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
    return poly;
}

/// Smallest order holding zeta_{4(n+1)} and sqrt(2).
inline int working_order(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
    return std::lcm(4 * (n + 1), 8);
}

class CyclotomicField {
public:
    explicit CyclotomicField(int order)
        : order_(order), phi_(cyclotomic_polynomial(order)), degree_(static_cast<int>(phi_.size()) - 1) {
        // powers_[k] = x^k mod Phi_M for 0 <= k < max(M, 2*degree - 1).
        const int count = std::max(order_, 2 * degree_ - 1);
        powers_.assign(static_cast<std::size_t>(count), IntPoly(static_cast<std::size_t>(degree_)));
        powers_[0][0] = 1;
        for (int k = 1; k < count; ++k) {
            const auto& prev = powers_[static_cast<std::size_t>(k - 1)];
            auto& cur = powers_[static_cast<std::size_t>(k)];
            const Integer top = prev[static_cast<std::size_t>(degree_ - 1)];
            for (int i = degree_ - 1; i >= 1; --i)
                cur[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
            cur[0] = 0;
            if (top != 0)
                for (int i = 0; i < degree_; ++i) cur[static_cast<std::size_t>(i)] -= top * phi_[static_cast<std::size_t>(i)];
        }
    }

    int order() const noexcept { return order_; }
    int degree() const noexcept { return degree_; }
    const IntPoly& modulus() const noexcept { return phi_; }
    const IntPoly& power(int k) const { return powers_.at(static_cast<std::size_t>(k)); }

private:
    int order_;
    IntPoly phi_;
    int degree_;
    std::vector<IntPoly> powers_;
};

/// An element of Q(zeta_M).
class Cyclotomic {
public:
    Cyclotomic() = default;

    Cyclotomic(std::shared_ptr<const CyclotomicField> field, const Rational& constant)
        : field_(std::move(field)), coeffs_(static_cast<std::size_t>(field_->degree())) {
        coeffs_[0] = constant;
    }

    Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != static_cast<std::size_t>(field_->degree()))
            throw Error(ErrorCode::InvalidArgument, "coefficient vector length must equal phi(M)");
    }

    /// zeta_M^k for any integer k.
    static Cyclotomic root_of_unity(std::shared_ptr<const CyclotomicField> field, long long k) {
        const long long M = field->order();
        const int r = static_cast<int>(((k % M) + M) % M);
        std::vector<Rational> c(static_cast<std::size_t>(field->degree()));
        const auto& p = field->power(r);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i];
        return Cyclotomic(std::move(field), std::move(c));
    }

    const std::shared_ptr<const CyclotomicField>& field() const noexcept { return field_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    int order() const noexcept { return field_->order(); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check_same_field(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) {
        check_same_field(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    Cyclotomic& operator*=(const Cyclotomic& o) {
        check_same_field(o);
        *this = multiply(*this, o);
        return *this;
    }

    Cyclotomic& operator*=(const Rational& r) {
        for (auto& c : coeffs_) c *= r;
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_same_field(b);
        return multiply(a, b);
    }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }

    friend Cyclotomic operator-(Cyclotomic a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.field_->order() == b.field_->order() && a.coeffs_ == b.coeffs_;
    }

    /// Multiplicative inverse; throws ZeroDivisor on zero.
    Cyclotomic inverse() const {
        if (is_zero()) throw Error(ErrorCode::ZeroDivisor, "inversion of zero in Q(zeta_" + std::to_string(order()) + ")");
        const int d = field_->degree();
        const auto ud = static_cast<std::size_t>(d);
        // Solve (multiplication-by-this matrix) * y = e_0 over Q.
        std::vector<std::vector<Rational>> a(ud, std::vector<Rational>(ud + 1));
        Cyclotomic basis = Cyclotomic(field_, Rational(1));
        const Cyclotomic x = root_of_unity(field_, 1);
        for (std::size_t j = 0; j < ud; ++j) {
            const Cyclotomic col = *this * basis;
            for (std::size_t i = 0; i < ud; ++i) a[i][j] = col.coeffs_[i];
            basis = basis * x;
        }
        a[0][ud] = 1;
        for (std::size_t c = 0; c < ud; ++c) {
            std::size_t piv = c;
            while (piv < ud && a[piv][c] == 0) ++piv;
            if (piv == ud) throw Error(ErrorCode::ZeroDivisor, "singular multiplication matrix");
            std::swap(a[c], a[piv]);
            const Rational inv = 1 / a[c][c];
            for (std::size_t k = c; k <= ud; ++k) a[c][k] *= inv;
            for (std::size_t r = 0; r < ud; ++r) {
                if (r == c || a[r][c] == 0) continue;
                const Rational f = a[r][c];
                for (std::size_t k = c; k <= ud; ++k) a[r][k] -= f * a[c][k];
            }
        }
        std::vector<Rational> y(ud);
        for (std::size_t i = 0; i < ud; ++i) y[i] = a[i][ud];
        return Cyclotomic(field_, std::move(y));
    }

    /// Integer power; negative exponents go through inverse().
    Cyclotomic pow(long long e) const {
        Cyclotomic base = e < 0 ? inverse() : *this;
        unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
        Cyclotomic acc(field_, Rational(1));
        while (k) {
            if (k & 1ULL) acc = acc * base;
            k >>= 1ULL;
            if (k) base = base * base;
        }
        return acc;
    }

    std::complex<double> to_complex() const {
        std::complex<double> sum = 0.0;
        const double step = 2.0 * std::numbers::pi / field_->order();
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) sum += coeffs_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
        return sum;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << coeffs_[k].get_str();
            if (k) os << "*z^" << k;
        }
        if (first) os << "0";
        os << " [z=zeta_" << order() << "]";
        return os.str();
    }

private:
    void check_same_field(const Cyclotomic& o) const {
        if (field_->order() != o.field_->order())
            throw Error(ErrorCode::InvalidArgument, "mixing elements of different cyclotomic fields");
    }

    static Cyclotomic multiply(const Cyclotomic& a, const Cyclotomic& b) {
        const auto d = static_cast<std::size_t>(a.field_->degree());
        std::vector<Rational> prod(2 * d - 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
        for (std::size_t k = d; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            const auto& row = a.field_->power(static_cast<int>(k));
            for (std::size_t i = 0; i < d; ++i)
                if (row[i] != 0) out[i] += prod[k] * row[i];
        }
        return Cyclotomic(a.field_, std::move(out));
    }

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rational> coeffs_;
};

/// Exact backend over Q(zeta_M).
class ExactBackend {
public:
    using value_type = Cyclotomic;
    static constexpr const char* name = "exact";

    explicit ExactBackend(int order) : field_(std::make_shared<const CyclotomicField>(order)) {}

    int order() const noexcept { return field_->order(); }
    const std::shared_ptr<const CyclotomicField>& field() const noexcept { return field_; }

    value_type zero() const { return value_type(field_, Rational(0)); }
    value_type one() const { return value_type(field_, Rational(1)); }
    value_type from_int(long long v) const { return value_type(field_, Rational(Integer(static_cast<long>(v)))); }
    value_type from_rational(Rational r) const {
        r.canonicalize();
        return value_type(field_, std::move(r));
    }
    value_type root_of_unity(long long k) const { return value_type::root_of_unity(field_, k); }

    /// zeta_8 + zeta_8^{-1}; requires 8 | M.
    value_type sqrt2() const {
        if (order() % 8 != 0) throw Error(ErrorCode::InvalidArgument, "sqrt(2) needs 8 | M");
        return root_of_unity(order() / 8) + root_of_unity(-order() / 8);
    }

    static value_type inv(const value_type& x) { return x.inverse(); }
    static value_type pow(const value_type& x, long long e) { return x.pow(e); }
    static bool is_zero(const value_type& x) { return x.is_zero(); }
    static bool equal(const value_type& a, const value_type& b) { return a == b; }
    static std::complex<double> approx(const value_type& x) { return x.to_complex(); }

    /// Succeeds only for values with no cyclotomic residue and unit denominator.
    static Integer extract_integer(const value_type& x) {
        const Rational r = extract_rational(x);
        if (r.get_den() != 1)
            throw Error(ErrorCode::NonInteger, "value is not an integer: " + r.get_str());
        return r.get_num();
    }

    static Rational extract_rational(const value_type& x) {
        if (!x.is_rational()) throw Error(ErrorCode::NonInteger, "value is not rational: " + x.to_string());
        return x.coeffs()[0];
    }

private:
    std::shared_ptr<const CyclotomicField> field_;
};

/// Double-precision complex backend sharing the exact backend's contract.
class FloatBackend {
public:
    using value_type = std::complex<double>;
    static constexpr const char* name = "float";
    static constexpr double integer_tolerance = 1e-6;

    explicit FloatBackend(int order) : order_(order) {}

    int order() const noexcept { return order_; }

    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    value_type from_int(long long v) const { return static_cast<double>(v); }
    value_type from_rational(const Rational& r) const { return r.get_d(); }
    value_type root_of_unity(long long k) const {
        const long long r = ((k % order_) + order_) % order_;
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / order_);
    }
    value_type sqrt2() const { return std::numbers::sqrt2; }

    static value_type inv(const value_type& x) {
        if (x == 0.0) throw Error(ErrorCode::ZeroDivisor, "inversion of zero");
        return 1.0 / x;
    }
    static value_type pow(const value_type& x, long long e) {
        value_type base = e < 0 ? inv(x) : x;
        unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
        value_type acc = 1.0;
        while (k) {
            if (k & 1ULL) acc *= base;
            k >>= 1ULL;
            if (k) base *= base;
        }
        return acc;
    }
    static bool is_zero(const value_type& x) { return std::abs(x) < 1e-12; }
    static bool equal(const value_type& a, const value_type& b) {
        return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
    static std::complex<double> approx(const value_type& x) { return x; }

    /// Rounds to the nearest integer if the residual is below 1e-6 * max(1, |x|).
    static Integer extract_integer(const value_type& x) {
        const double nearest = std::round(x.real());
        const double residual = std::abs(x - value_type(nearest, 0.0));
        if (!(residual < integer_tolerance * std::max(1.0, std::abs(x)))) {
            std::ostringstream os;
            os.precision(17);
            os << "value is not an integer: " << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
            throw Error(ErrorCode::NonInteger, os.str());
        }
        Integer out;
        out = nearest;
        return out;
    }

    static Rational extract_rational(const value_type& x) { return Rational(extract_integer(x)); }

private:
    int order_;
};

} // namespace lgq
