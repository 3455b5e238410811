#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lgq/gw_invariants.hpp"
#include "lgq/verify.hpp"

using namespace lgq;

namespace {

StrictPartition sp(int n, std::vector<int> parts) { return StrictPartition(n, std::move(parts)); }

std::vector<StrictPartition> ones(int n, int count) { return std::vector<StrictPartition>(static_cast<std::size_t>(count), sp(n, {1})); }

Integer pow_int(long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

} // namespace

TEST(ExpectedDimension, Examples) {
    EXPECT_EQ(expected_dimension(2, -1, 0, 2), 0);
    EXPECT_EQ(expected_dimension(1, 0, 1, 2), 0);
    for (int n = 1; n <= 4; ++n)
        for (int e = -3; e <= 3; ++e)
            EXPECT_EQ(expected_dimension(n, e - 1, 0, 2) - expected_dimension(n, e, 0, 2), n + 1);
}

TEST(MaximalDegree, Examples) {
    EXPECT_EQ(maximal_degree_e0(2, 2, 0), -1);
    EXPECT_EQ(maximal_degree_e0(1, 2, 1), 0);
    EXPECT_EQ(maximal_degree_e0(2, 3, 0), -2);
    EXPECT_EQ(maximal_degree_e0(1, 2, 0), 0);  // ceil(-1/2)
    EXPECT_EQ(maximal_degree_e0(1, 4, 0), -1); // ceil(-3/2)
}

TEST(DimensionCondition, Examples) {
    EXPECT_EQ(dimension_condition(2, 0, ones(2, 3)), 0);
    EXPECT_EQ(dimension_condition(1, 2, {}), std::nullopt);
    EXPECT_EQ(dimension_condition(1, 0, ones(1, 3)), 1);
    EXPECT_EQ(dimension_condition(1, 0, ones(1, 0)), std::nullopt); // d = -1/2
    EXPECT_EQ(dimension_condition(2, 0, {}), std::nullopt);         // d = -1
}

TEST(GWInvariant, Examples) {
    EXPECT_EQ(gw_invariant(2, 0, 0, ones(2, 3)), 2);
    EXPECT_EQ(gw_invariant(1, 0, 1, ones(1, 3)), 1);
    EXPECT_EQ(gw_invariant(1, 1, 0, {}), 2);
    EXPECT_EQ(gw_invariant(2, 0, 5, {sp(2, {1})}), 0);
    EXPECT_EQ(gw_invariant(2, 0, -1, {}), 0);
}

TEST(GWInvariant, ClassicalPointClassIsOne) {
    // <1, 1, [pt]>_{0,0} = 1 with [pt] the rho class.
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(gw_invariant(n, 0, 0, {StrictPartition(n, {}), StrictPartition(n, {}), rho(n)}), 1) << n;
}

TEST(GWInvariant, GenusOneWithoutInsertionsCountsPoints) {
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(gw_invariant(n, 1, 0, {}), Integer(1) << n);
}

TEST(GWInvariant, RejectsForeignRank) {
    EXPECT_THROW(gw_invariant(2, 0, 0, {sp(3, {1})}), Error);
    EXPECT_THROW(gw_invariant(2, -1, 0, {}), Error);
}

TEST(GWInvariant, PermutationInvariant) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = verify::random_gw_case(rng, 3, 0, 3);
        const auto base = gw_invariant(c.n, c.g, c.d, c.insertions);
        std::shuffle(c.insertions.begin(), c.insertions.end(), rng);
        EXPECT_EQ(gw_invariant(c.n, c.g, c.d, c.insertions), base) << c.describe();
    }
}

TEST(GWInvariant, NonnegativeAtPositiveGenus) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = verify::random_gw_case(rng, 3, 1, 4);
        EXPECT_GE(gw_invariant(c.n, c.g, c.d, c.insertions), 0) << c.describe();
    }
}

TEST(IntersectionNumber, Examples) {
    const auto one = SchubertExpression::constant(2, Rational(1));
    EXPECT_EQ(intersection_number(2, 2, 0, -1, one), 16);
    EXPECT_EQ(intersection_number(2, 2, -1, -2, one), 20);
    EXPECT_EQ(intersection_number(2, 2, 0, -1, SchubertExpression::monomial(2, {1})), 0);
}

TEST(IntersectionNumber, TrivialBundleMatchesGW) {
    const auto ins = std::vector<StrictPartition>{sp(2, {2, 1}), sp(2, {2, 1})};
    const auto d = dimension_condition(2, 2, ins);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(intersection_number(2, 2, 0, -*d, SchubertExpression::product(2, ins)), gw_invariant(2, 2, *d, ins));
}

TEST(IntersectionNumber, PrefactorsCoincideOnTrivialBundle) {
    // 2^{n(g-1)+e-mn} at l = 0 (m = 0) equals 2^{n(g-1)-d} at d = -e.
    for (int n = 1; n <= 4; ++n)
        for (int g = 0; g <= 5; ++g)
            for (int e = -6; e <= 0; ++e) {
                const long long a = static_cast<long long>(n) * (g - 1) + e - half_ell(0) * n;
                EXPECT_EQ(power_of_two(a), power_of_two(static_cast<long long>(n) * (g - 1) - (-e)));
            }
}

TEST(IntersectionNumber, NonHomogeneousRejected) {
    const SchubertExpression p(2, {SchubertTerm{Rational(1), {sp(2, {1})}}, SchubertTerm{Rational(1), {sp(2, {2})}}});
    EXPECT_THROW(intersection_number(2, 2, 0, -1, p), Error);
    try {
        (void)intersection_number(2, 2, 0, -1, p);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonHomogeneous);
    }
}

TEST(IntersectionNumber, MonomialsIntegralAndNonnegative) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(verify::uniform(rng, 1, 3));
        const long long g = verify::uniform(rng, 0, 4), ell = verify::uniform(rng, -2, 2);
        const long long e = floor_div(-static_cast<long long>(n) * (n + 1) / 2 * (g - 1 - ell), n + 1) - verify::uniform(rng, 0, 2);
        const auto p = verify::random_monomial(rng, n, expected_dimension(n, e, ell, g));
        EXPECT_GE(intersection_number(n, g, ell, e, p), 0);
    }
}

TEST(MaximalCount, Examples) {
    EXPECT_EQ(maximal_count(1, 2, 1), 4);
    EXPECT_EQ(maximal_count(2, 2, -1), 20);
    EXPECT_EQ(maximal_count(2, 2, 0), 16);
    EXPECT_EQ(maximal_count(2, 3, 0), 112);
    EXPECT_EQ(maximal_count(2, 3, -1), 104);
}

TEST(MaximalCount, RankTwoClosedForm) {
    for (int g = 2; g <= 10; ++g) EXPECT_EQ(maximal_count(1, g, (g % 2 == 0) ? 1 : 0), Integer(1) << g);
}

TEST(MaximalCount, RankFourClosedForm) {
    for (int g = 2; g <= 6; ++g)
        for (int ell : {-1, 0}) {
            const Integer three = pow_int(3, static_cast<unsigned long>(g));
            const Integer expected = (Integer(1) << (g - 1)) * (((g + ell) % 2 != 0) ? Integer(three + 1) : Integer(three - 1));
            EXPECT_EQ(maximal_count(2, g, ell), expected) << "g=" << g << " l=" << ell;
        }
}

TEST(MaximalCount, AgreesWithIntersectionNumberOfOne) {
    for (int n = 1; n <= 3; ++n)
        for (int g = 0; g <= 5; ++g)
            for (int ell = -3; ell <= 3; ++ell) {
                if ((static_cast<long long>(n) * (ell - g + 1)) % 2 != 0) continue;
                const long long e = maximal_count_degree(n, g, ell);
                EXPECT_EQ(maximal_count(n, g, ell),
                          intersection_number(n, g, ell, e, SchubertExpression::constant(n, Rational(1))))
                    << "n=" << n << " g=" << g << " l=" << ell;
            }
}

TEST(MaximalCount, ParityError) {
    try {
        (void)maximal_count(1, 2, 0);
        FAIL() << "expected a parity error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parity);
    }
}

TEST(Backends, FloatAgreesWithExact) {
    for (int n = 1; n <= 3; ++n) {
        const auto f = float_backend_for_rank(n);
        for (int g = 0; g <= 4; ++g) {
            for (int ell = -2; ell <= 1; ++ell) {
                if ((static_cast<long long>(n) * (ell - g + 1)) % 2 != 0) continue;
                EXPECT_TRUE(verify::float_agrees(maximal_count(n, g, ell), maximal_count_value(f, n, g, ell)));
            }
            const auto ins = ones(n, n * (n + 1) / 2 + 2 * (n + 1));
            const auto d = dimension_condition(n, g, ins);
            if (d) {
                EXPECT_TRUE(verify::float_agrees(gw_invariant(n, g, *d, ins), gw_invariant_value(f, n, g, *d, ins)));
            }
        }
    }
}

TEST(Backends, FloatExtractionToleratesRoundoff) {
    const auto f = float_backend_for_rank(2);
    EXPECT_EQ(gw_invariant(f, 2, 0, 0, ones(2, 3)), 2);
    EXPECT_EQ(maximal_count(f, 2, 3, 0), 112);
}

TEST(Identities, Examples) {
    const auto one2 = SchubertExpression::constant(2, Rational(1));
    const auto one1 = SchubertExpression::constant(1, Rational(1));
    EXPECT_TRUE(verify_twist_identity(2, 2, 0, -1, one2, 1));
    EXPECT_TRUE(verify_twist_identity(1, 2, 1, 0, one1, -2));
    EXPECT_TRUE(verify_twist_identity(2, 3, 0, -2, one2, 0));
    EXPECT_TRUE(verify_hecke_recursion(1, 2, 1, 0, one1, 1));
    EXPECT_TRUE(verify_hecke_recursion(2, 2, 0, -1, one2, 0));
    EXPECT_TRUE(verify_hecke_recursion(2, 2, 0, -1, one2, 1));
    EXPECT_TRUE(verify_rho_insertion(1, 1, 0, {}, 1));
    EXPECT_TRUE(verify_rho_insertion(1, 1, 0, {}, 0));
    EXPECT_TRUE(verify_rho_insertion(2, 0, 0, ones(2, 3), 1));
    EXPECT_TRUE(verify_trivial_bundle(2, 0, 0, ones(2, 3)));
    EXPECT_THROW(verify_trivial_bundle(2, 0, 1, {}), Error);
    EXPECT_THROW(verify_hecke_recursion(2, 2, 0, -1, one2, -1), Error);
}

TEST(Identities, HeckeRightSideIsNontrivial) {
    // Both sides of the k = 1 recursion equal the count 4 at rank 1.
    const auto one1 = SchubertExpression::constant(1, Rational(1));
    EXPECT_EQ(intersection_number(1, 2, 1, -1, one1.times(rho(1), 2)), 4);
}

TEST(IdentitySuites, SeededRunsPass) {
    verify::SuiteOptions o;
    o.max_n = 2;
    o.max_genus = 3;
    o.cases = 15;
    o.seed = 99;
    for (const auto& s : verify::identity_suites(o)) {
        EXPECT_TRUE(s.passed()) << s.name << ": " << (s.failures.empty() ? "" : s.failures.front());
        EXPECT_GT(s.nontrivial, 0u) << s.name;
    }
}

TEST(SummationThreads, ResultIndependentOfWorkerCount) {
    const auto ins = std::vector<StrictPartition>{sp(3, {3, 2, 1}), sp(3, {3, 2, 1}), sp(3, {2})};
    const auto d = dimension_condition(3, 2, ins);
    ASSERT_TRUE(d.has_value());
    const auto& b = exact_backend_for_rank(3);
    setenv("LGQ_THREADS", "1", 1);
    const auto serial = gw_invariant_value(b, 3, 2, *d, ins);
    setenv("LGQ_THREADS", "4", 1);
    const auto parallel = gw_invariant_value(b, 3, 2, *d, ins);
    unsetenv("LGQ_THREADS");
    EXPECT_EQ(serial, parallel);
}

TEST(GWInvariant, NegativePowerOfVanishingSchurIsAnError) {
    // S_(1)(1, -1) = 0, so genus 0 would need 1/0.
    const auto& b = exact_backend_for_rank(1);
    PointEvaluator<ExactBackend> ev(b, {b.one(), b.from_int(-1)});
    try {
        (void)detail::schur_rho_power(ev, 1, -1);
        FAIL() << "expected a nonvanishing error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Nonvanishing);
    }
    EXPECT_EQ(detail::schur_rho_power(ev, 1, 2), b.zero());
}
