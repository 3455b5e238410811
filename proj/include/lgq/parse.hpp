#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgq/combinatorics.hpp"
#include "lgq/cyclotomic.hpp"
#include "lgq/error.hpp"
#include "lgq/gw_invariants.hpp"

// Text forms of query inputs.
//
//   partitions:  list := part (';' part)* | ''        part := int (',' int)*
//   polynomial:  expr := ['+'|'-'] term (('+'|'-') term)*
//                term := rational | [rational '*'] factor ('*' factor)*
//                factor := 'a' int ['^' int] | 'Q[' int (',' int)* ']' ['^' int]
//                rational := int ['/' int]
//
// Whitespace between tokens is ignored. Errors report a 0-based character position.
namespace lgq {

namespace detail {

class Cursor {
public:
    Cursor(const std::string& text, std::string what) : s_(text), what_(std::move(what)) {}

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ >= s_.size();
    }
    std::size_t pos() const noexcept { return pos_; }
    std::optional<char> peek() {
        skip_space();
        if (pos_ >= s_.size()) return std::nullopt;
        return s_[pos_];
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Integer integer() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer", start);
        return Integer(s_.substr(start, pos_ - start));
    }

    int small_int() {
        const std::size_t start = (skip_space(), pos_);
        const Integer v = integer();
        if (!v.fits_sint_p()) fail("integer out of range", start);
        return static_cast<int>(v.get_si());
    }

    [[noreturn]] void fail(const std::string& msg) { fail(msg, (skip_space(), pos_)); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw Error(ErrorCode::Parse, what_ + ": " + msg + " at position " + std::to_string(at));
    }

private:
    const std::string& s_;
    std::string what_;
    std::size_t pos_ = 0;
};

inline StrictPartition strict_parts(Cursor& c, int n, char closing) {
    std::vector<int> parts;
    do {
        const std::size_t at = (c.skip_space(), c.pos());
        const int p = c.small_int();
        if (p < 1 || p > n) c.fail("part " + std::to_string(p) + " outside 1.." + std::to_string(n), at);
        if (!parts.empty() && p >= parts.back())
            c.fail("parts must be strictly decreasing", at);
        parts.push_back(p);
    } while (c.accept(','));
    if (closing != '\0' && c.peek() != closing) c.fail(std::string("expected ',' or '") + closing + "'");
    return StrictPartition(n, std::move(parts));
}

} // namespace detail

/// "2,1;2;1" -> {(2,1), (2), (1)}; "" -> {}.
inline std::vector<StrictPartition> parse_partitions(const std::string& text, int n) {
    detail::Cursor c(text, "partitions");
    std::vector<StrictPartition> out;
    if (c.done()) return out;
    do {
        out.push_back(detail::strict_parts(c, n, '\0'));
        const auto next = c.peek();
        if (next && *next != ';') c.fail("expected ',' or ';'");
    } while (c.accept(';'));
    if (!c.done()) c.fail("unexpected trailing input");
    return out;
}

inline SchubertExpression parse_polynomial(const std::string& text, int n) {
    constexpr int max_exponent = 4096;
    detail::Cursor c(text, "polynomial");
    if (c.done()) c.fail("empty polynomial");
    std::vector<SchubertTerm> terms;

    auto parse_exponent = [&]() -> int {
        if (!c.accept('^')) return 1;
        const std::size_t at = (c.skip_space(), c.pos());
        const int p = c.small_int();
        if (p > max_exponent) c.fail("exponent above " + std::to_string(max_exponent), at);
        return p;
    };

    auto parse_factor = [&](std::vector<StrictPartition>& factors) {
        const std::size_t at = (c.skip_space(), c.pos());
        if (c.accept('a')) {
            const std::size_t kat = (c.skip_space(), c.pos());
            const int k = c.small_int();
            if (k < 1 || k > n) c.fail("variable a" + std::to_string(k) + " outside a1..a" + std::to_string(n), kat);
            const int p = parse_exponent();
            for (int i = 0; i < p; ++i) factors.emplace_back(n, std::vector<int>{k});
        } else if (c.accept('Q')) {
            c.expect('[');
            const auto lambda = detail::strict_parts(c, n, ']');
            c.expect(']');
            const int p = parse_exponent();
            for (int i = 0; i < p; ++i) factors.push_back(lambda);
        } else {
            c.fail("expected a factor 'a<k>' or 'Q[...]'", at);
        }
    };

    auto parse_term = [&](bool negative) {
        SchubertTerm t{Rational(negative ? -1 : 1), {}};
        const auto first = c.peek();
        if (first && std::isdigit(static_cast<unsigned char>(*first))) {
            const std::size_t at = (c.skip_space(), c.pos());
            Rational r(c.integer());
            if (c.accept('/')) {
                const Integer den = c.integer();
                if (den == 0) c.fail("zero denominator", at);
                r /= Rational(den);
            }
            t.coefficient *= r;
            if (!c.accept('*')) {
                terms.push_back(std::move(t));
                return;
            }
        }
        do parse_factor(t.factors);
        while (c.accept('*'));
        terms.push_back(std::move(t));
    };

    bool negative = false;
    if (c.accept('-'))
        negative = true;
    else
        c.accept('+');
    parse_term(negative);
    while (!c.done()) {
        if (c.accept('+'))
            negative = false;
        else if (c.accept('-'))
            negative = true;
        else
            c.fail("expected '+', '-' or '*'");
        parse_term(negative);
    }
    return SchubertExpression(n, std::move(terms));
}

/// Parses "a..b" into an inclusive range.
inline std::pair<long long, long long> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw Error(ErrorCode::Parse, "range: expected 'a..b' at position 0");
    auto number = [&](const std::string& s, std::size_t at) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw Error(ErrorCode::Parse, "range: expected an integer at position " + std::to_string(at));
        return v;
    };
    const long long lo = number(text.substr(0, dots), 0);
    const long long hi = number(text.substr(dots + 2), dots + 2);
    if (lo > hi) throw Error(ErrorCode::Parse, "range: empty range at position 0");
    return {lo, hi};
}

inline std::string format_partitions(const std::vector<StrictPartition>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ';';
        for (std::size_t k = 0; k < ps[i].parts().size(); ++k) {
            if (k) out += ',';
            out += std::to_string(ps[i].parts()[k]);
        }
    }
    return out;
}

/// Inverse of parse_polynomial up to factor grouping.
inline std::string format_expression(const SchubertExpression& p) {
    std::string out;
    for (const auto& t : p.terms()) {
        Rational c = t.coefficient;
        if (out.empty()) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        c = abs(c);
        std::string body;
        for (std::size_t i = 0; i < t.factors.size();) {
            std::size_t j = i;
            while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
            if (!body.empty()) body += '*';
            const auto& f = t.factors[i];
            if (f.length() == 1)
                body += "a" + std::to_string(f.parts()[0]);
            else
                body += "Q[" + format_partitions({f}) + "]";
            if (j - i > 1) body += "^" + std::to_string(j - i);
            i = j;
        }
        if (body.empty())
            out += c.get_str();
        else if (c != 1)
            out += c.get_str() + "*" + body;
        else
            out += body;
    }
    return out.empty() ? "0" : out;
}

} // namespace lgq
