#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * Partitions and root-of-unity index sets.
 *
 * Strict partitions with parts bounded by n label the Schubert basis of
 * LG(n). The index sets T_N, I_N and I_N^e enumerate the points zeta^J at
 * which every closed formula is summed. Half-integral exponents are stored
 * doubled, so every membership test is residue arithmetic on integers.
 */
namespace lgq {

/// Weakly decreasing sequence of nonnegative integers. Trailing zeros are dropped.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }

    /// Part i (0-based), zero beyond the length.
    int operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

/// A member of D(n): strictly decreasing positive parts, each at most n.
class StrictPartition {
public:
    StrictPartition() = default;

    StrictPartition(int n, std::vector<int> parts) : n_(n), parts_(std::move(parts)) {
        if (n_ < 1) throw std::invalid_argument("rank must be positive");
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1 || parts_[i] > n_)
                throw std::invalid_argument("strict partition part " + std::to_string(parts_[i]) +
                                            " outside 1.." + std::to_string(n_));
            if (i + 1 < parts_.size() && parts_[i] <= parts_[i + 1])
                throw std::invalid_argument("strict partition parts must be strictly decreasing");
        }
    }

    int rank() const noexcept { return n_; }
    const std::vector<int>& parts() const noexcept { return parts_; }
    int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }
    bool contains(int part) const noexcept {
        return std::find(parts_.begin(), parts_.end(), part) != parts_.end();
    }

    Partition as_partition() const { return Partition(parts_); }

    std::string to_string() const {
        if (parts_.empty()) return "()";
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    bool operator==(const StrictPartition&) const = default;

private:
    int n_ = 1;
    std::vector<int> parts_;
};

/// Weight ascending, ties broken lexicographically descending on the parts.
inline bool canonical_less(const StrictPartition& a, const StrictPartition& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return std::lexicographical_compare(b.parts().begin(), b.parts().end(),
                                        a.parts().begin(), a.parts().end());
}

/// All of D(n) in canonical order; 2^n entries.
inline std::vector<StrictPartition> strict_partitions(int n) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    std::vector<StrictPartition> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<int> parts;
        for (int k = n; k >= 1; --k)
            if (mask & (std::uint32_t{1} << (k - 1))) parts.push_back(k);
        out.emplace_back(n, std::move(parts));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

/// Complementary part set in {1..n}.
inline StrictPartition dual_partition(const StrictPartition& lambda) {
    std::vector<int> parts;
    for (int k = lambda.rank(); k >= 1; --k)
        if (!lambda.contains(k)) parts.push_back(k);
    return StrictPartition(lambda.rank(), std::move(parts));
}

/// The staircase (n, n-1, ..., 1).
inline StrictPartition rho(int n) {
    if (n < 1) throw std::invalid_argument("rank must be positive");
    std::vector<int> parts(static_cast<std::size_t>(n));
    std::iota(parts.rbegin(), parts.rend(), 1);
    return StrictPartition(n, std::move(parts));
}

/// A point J of T_N stored as doubled[i] = 2 * j_i.
struct IndexTuple {
    int N = 0;
    std::vector<int> doubled;

    auto operator<=>(const IndexTuple&) const = default;
};

/// Inclusive bounds on the doubled entries of T_N.
struct DoubledRange {
    int lo;
    int hi;
};

inline DoubledRange index_bounds(int N) {
    if (N < 1) throw std::invalid_argument("index tuple length must be positive");
    if (N % 2 == 1) {
        const int m = (N - 1) / 2;
        return {-2 * m, 6 * m + 2};
    }
    const int m = N / 2;
    return {-2 * m + 1, 6 * m - 1};
}

/// Enumerates T_N in lexicographic order.
inline std::vector<IndexTuple> index_tuples_T(int N) {
    const auto [lo, hi] = index_bounds(N);
    std::vector<int> values;
    for (int v = lo; v <= hi; v += 2) values.push_back(v);

    std::vector<IndexTuple> out;
    const int pool = static_cast<int>(values.size());
    if (N > pool) return out;
    std::vector<int> pick(static_cast<std::size_t>(N));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        IndexTuple t{N, {}};
        t.doubled.reserve(pick.size());
        for (int p : pick) t.doubled.push_back(values[static_cast<std::size_t>(p)]);
        out.push_back(std::move(t));

        int i = N - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == pool - N + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < N; ++k)
            pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
    return out;
}

inline int positive_mod(long long a, long long m) {
    const long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

/// zeta^{j_k} != -zeta^{j_l} for k != l, with zeta = exp(pi i / N).
inline bool has_no_antipodal_pair(const IndexTuple& J) {
    const int period = 4 * J.N;
    for (std::size_t k = 0; k < J.doubled.size(); ++k)
        for (std::size_t l = k + 1; l < J.doubled.size(); ++l)
            if (positive_mod(J.doubled[k] - J.doubled[l], period) == 2 * J.N) return false;
    return true;
}

/// prod_k zeta^{j_k} == 1.
inline bool has_unit_product(const IndexTuple& J) {
    const long long sum = std::accumulate(J.doubled.begin(), J.doubled.end(), 0LL);
    return positive_mod(sum, 4LL * J.N) == 0;
}

inline std::vector<IndexTuple> filter_I(const std::vector<IndexTuple>& tuples) {
    std::vector<IndexTuple> out;
    std::copy_if(tuples.begin(), tuples.end(), std::back_inserter(out), has_no_antipodal_pair);
    return out;
}

inline std::vector<IndexTuple> filter_I_even(const std::vector<IndexTuple>& tuples) {
    std::vector<IndexTuple> out;
    for (const auto& J : tuples)
        if (has_no_antipodal_pair(J) && has_unit_product(J)) out.push_back(J);
    return out;
}

/// I_{n+1}^e, the summation set of every formula for LG(n).
inline std::vector<IndexTuple> summation_points(int n) {
    return filter_I_even(index_tuples_T(n + 1));
}

} // namespace lgq
