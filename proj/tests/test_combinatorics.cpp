#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "lgq/combinatorics.hpp"

using namespace lgq;

namespace {

std::vector<std::vector<int>> parts_of(const std::vector<StrictPartition>& v) {
    std::vector<std::vector<int>> out;
    for (const auto& p : v) out.push_back(p.parts());
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Membership in I_N^e decided with complex exponentials instead of residues.
bool in_I_even_by_roots(const IndexTuple& J) {
    const double tol = 1e-9;
    std::vector<std::complex<double>> z;
    for (int d : J.doubled) z.push_back(std::polar(1.0, std::numbers::pi * d / (2.0 * J.N)));
    for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t l = k + 1; l < z.size(); ++l)
            if (std::abs(z[k] + z[l]) < tol) return false;
    std::complex<double> prod = 1.0;
    for (auto x : z) prod *= x;
    return std::abs(prod - 1.0) < tol;
}

} // namespace

TEST(StrictPartitions, SmallRanksInCanonicalOrder) {
    EXPECT_EQ(parts_of(strict_partitions(1)), (std::vector<std::vector<int>>{{}, {1}}));
    EXPECT_EQ(parts_of(strict_partitions(2)), (std::vector<std::vector<int>>{{}, {1}, {2}, {2, 1}}));
    EXPECT_EQ(parts_of(strict_partitions(3)),
              (std::vector<std::vector<int>>{{}, {1}, {2}, {3}, {2, 1}, {3, 1}, {3, 2}, {3, 2, 1}}));
}

TEST(StrictPartitions, CardinalityIsPowerOfTwo) {
    for (int n = 1; n <= 10; ++n) {
        const auto all = strict_partitions(n);
        EXPECT_EQ(all.size(), std::size_t{1} << n);
        std::set<std::vector<int>> unique;
        for (const auto& p : all) unique.insert(p.parts());
        EXPECT_EQ(unique.size(), all.size());
    }
}

TEST(StrictPartitions, RejectsInvalidParts) {
    EXPECT_THROW(StrictPartition(2, {3}), std::invalid_argument);
    EXPECT_THROW(StrictPartition(3, {1, 2}), std::invalid_argument);
    EXPECT_THROW(StrictPartition(3, {2, 2}), std::invalid_argument);
    EXPECT_THROW(StrictPartition(3, {0}), std::invalid_argument);
    EXPECT_NO_THROW(StrictPartition(3, {}));
}

TEST(Partition, DerivedWeightAndLength) {
    const Partition p({3, 1, 1, 0, 0});
    EXPECT_EQ(p.weight(), 5);
    EXPECT_EQ(p.length(), 3);
    EXPECT_EQ(p[5], 0);
    EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
}

TEST(DualPartition, Examples) {
    EXPECT_EQ(dual_partition(StrictPartition(2, {})).parts(), (std::vector<int>{2, 1}));
    EXPECT_EQ(dual_partition(StrictPartition(3, {3, 1})).parts(), (std::vector<int>{2}));
    for (int n = 1; n <= 5; ++n) EXPECT_TRUE(dual_partition(rho(n)).empty());
}

TEST(DualPartition, InvolutionAndComplementaryWeight) {
    for (int n = 1; n <= 8; ++n)
        for (const auto& l : strict_partitions(n)) {
            EXPECT_EQ(dual_partition(dual_partition(l)), l);
            EXPECT_EQ(l.weight() + dual_partition(l).weight(), n * (n + 1) / 2);
        }
}

TEST(Rho, Staircase) {
    EXPECT_EQ(rho(1).parts(), (std::vector<int>{1}));
    EXPECT_EQ(rho(2).parts(), (std::vector<int>{2, 1}));
    EXPECT_EQ(rho(2).weight(), 3);
    EXPECT_EQ(rho(4).parts(), (std::vector<int>{4, 3, 2, 1}));
    EXPECT_EQ(rho(4).weight(), 10);
}

TEST(IndexTuples, SmallCases) {
    const auto t1 = index_tuples_T(1);
    ASSERT_EQ(t1.size(), 2u);
    EXPECT_EQ(t1[0].doubled, (std::vector<int>{0}));
    EXPECT_EQ(t1[1].doubled, (std::vector<int>{2}));

    const auto t2 = index_tuples_T(2);
    ASSERT_EQ(t2.size(), 6u);
    std::set<std::vector<int>> expected{{-1, 1}, {-1, 3}, {-1, 5}, {1, 3}, {1, 5}, {3, 5}};
    std::set<std::vector<int>> got;
    for (const auto& t : t2) got.insert(t.doubled);
    EXPECT_EQ(got, expected);

    EXPECT_EQ(index_tuples_T(3).size(), 20u);
}

TEST(IndexTuples, CardinalityBoundsParityAndOrder) {
    for (int N = 1; N <= 9; ++N) {
        const auto tuples = index_tuples_T(N);
        const int m = N / 2;
        const long long expected = (N % 2) ? binomial(4 * m + 2, N) : binomial(4 * m, N);
        EXPECT_EQ(static_cast<long long>(tuples.size()), expected) << "N=" << N;
        const auto [lo, hi] = index_bounds(N);
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            const auto& t = tuples[i];
            ASSERT_EQ(static_cast<int>(t.doubled.size()), N);
            for (std::size_t k = 0; k < t.doubled.size(); ++k) {
                EXPECT_GE(t.doubled[k], lo);
                EXPECT_LE(t.doubled[k], hi);
                EXPECT_EQ(std::abs(t.doubled[k]) % 2, N % 2 == 0 ? 1 : 0);
                if (k + 1 < t.doubled.size()) {
                    EXPECT_LT(t.doubled[k], t.doubled[k + 1]);
                }
            }
            if (i + 1 < tuples.size()) {
                EXPECT_LT(t, tuples[i + 1]);
            }
        }
    }
}

TEST(IndexFilters, RankTwoByHand) {
    const auto T2 = index_tuples_T(2);
    std::set<std::vector<int>> I, Ie;
    for (const auto& t : filter_I(T2)) I.insert(t.doubled);
    for (const auto& t : filter_I_even(T2)) Ie.insert(t.doubled);
    EXPECT_EQ(I, (std::set<std::vector<int>>{{-1, 1}, {-1, 5}, {1, 3}, {3, 5}}));
    EXPECT_EQ(Ie, (std::set<std::vector<int>>{{-1, 1}, {3, 5}}));
    EXPECT_EQ(filter_I_even(index_tuples_T(3)).size(), 4u);
}

TEST(IndexFilters, ResidueFilterMatchesComplexRoots) {
    for (int N = 1; N <= 7; ++N) {
        const auto all = index_tuples_T(N);
        const auto kept = filter_I_even(all);
        std::set<std::vector<int>> kept_set;
        for (const auto& t : kept) kept_set.insert(t.doubled);
        for (const auto& t : all) EXPECT_EQ(kept_set.count(t.doubled) == 1, in_I_even_by_roots(t)) << "N=" << N;
        for (const auto& t : kept) {
            EXPECT_TRUE(has_no_antipodal_pair(t));
            EXPECT_TRUE(has_unit_product(t));
        }
    }
}

TEST(IndexFilters, SummationSetMatchesCohomologyDimension) {
    for (int n = 1; n <= 10; ++n) {
        EXPECT_EQ(summation_points(n).size(), std::size_t{1} << n) << "n=" << n;
        EXPECT_EQ(summation_points(n).size(), strict_partitions(n).size());
    }
}
