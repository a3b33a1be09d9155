#include <random>

#include <gtest/gtest.h>

#include "artin/li.hpp"
#include "artin/theory.hpp"

namespace artin::theory {
namespace {

std::vector<std::uint64_t> squarefree_bases(std::uint64_t upto) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 3; a <= upto; ++a)
        if (is_squarefree(a))
            out.push_back(a);
    return out;
}

TEST(Arithmetic, SmallValues) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(20), 8u);
    EXPECT_EQ(euler_phi(97), 96u);
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(30), -1);
    EXPECT_EQ(mobius(12), 0);
    EXPECT_EQ(core(72), 6u);
    EXPECT_EQ(core(1), 1u);
    EXPECT_TRUE(is_squarefree(21));
    EXPECT_FALSE(is_squarefree(18));
}

TEST(Hypotheses, RejectedBases) {
    EXPECT_THROW(require_hypotheses(2), HypothesisViolation);
    EXPECT_THROW(require_hypotheses(12), HypothesisViolation);
    EXPECT_THROW(kummer_degree({4, 4, 2}), HypothesisViolation);
    EXPECT_NO_THROW(require_hypotheses(21));
}

TEST(KummerDegree, Examples) {
    EXPECT_EQ(kummer_degree({5, 4, 2}).value, 4u);
    EXPECT_EQ(kummer_degree({5, 20, 2}), (KummerDegree{8, true, false}));
    EXPECT_EQ(kummer_degree({3, 3, 3}), (KummerDegree{6, false, false}));
    EXPECT_EQ(kummer_degree({5, 2, 2}).value, 2u);
    EXPECT_EQ(kummer_degree({3, 12, 2}), (KummerDegree{4, true, false}));
    EXPECT_TRUE(kummer_degree({5, 3, 2}).generalized);
    EXPECT_THROW(kummer_degree({5, 0, 2}), InvalidArgument);
}

TEST(KummerDegree, MatchesThreeCaseFormulaWhenMDividesR) {
    for (auto a : squarefree_bases(60)) {
        const std::uint64_t a1 = a;
        const std::uint64_t h1 = a1 % 4 == 1 ? 2 * a1 : 4 * a1;
        for (std::uint64_t r = 1; r <= 240; ++r) {
            for (std::uint64_t m = 1; m <= r; ++m) {
                if (r % m != 0)
                    continue;
                const std::uint64_t full = m * euler_phi(r);
                std::uint64_t expected = full;
                if (m % 2 == 0 && r % h1 == 0)
                    expected = full / 2;
                const auto got = kummer_degree({a, r, m});
                ASSERT_EQ(got.value, expected) << a << " " << r << " " << m;
                ASSERT_FALSE(got.generalized);
            }
        }
    }
}

TEST(KummerDegree, GeneralizedValueDividesTheNaiveBound) {
    for (auto a : squarefree_bases(40)) {
        for (std::uint64_t r = 1; r <= 60; ++r) {
            for (std::uint64_t m = 1; m <= 24; ++m) {
                const auto got = kummer_degree({a, r, m}).value;
                const auto full = m * euler_phi(r);
                ASSERT_EQ(full % got, 0u);
                ASSERT_LE(full / got, 2u);
            }
        }
    }
}

TEST(Hasse, Values) {
    EXPECT_EQ(hasse_density(2), Rational(2, 3));
    EXPECT_EQ(hasse_density(3), Rational(3, 8));
    EXPECT_EQ(hasse_density(5), Rational(5, 24));
    EXPECT_THROW(hasse_density(4), InvalidArgument);
    EXPECT_THROW(hasse_density(1), InvalidArgument);
}

TEST(Hasse, TimesQSquaredMinusOneIsQ) {
    for (std::uint64_t q : {2ull, 3ull, 7ull, 101ull, 65537ull}) {
        const auto qq = static_cast<std::int64_t>(q);
        EXPECT_EQ(hasse_density(q) * Rational(qq * qq - 1), Rational(qq));
    }
}

TEST(Q40, FirstPartialSum) {
    const auto b = q40_coefficient(5, 1);
    EXPECT_EQ(b.partial, Rational(3, 8));
    EXPECT_EQ(b.tail_bound, Rational(1, 4));
    EXPECT_THROW(q40_coefficient(5, 0), InvalidArgument);
    EXPECT_THROW(q40_coefficient(5, 31), InvalidArgument);
}

TEST(Q40, BracketsOneThird) {
    for (std::uint64_t a : {3ull, 5ull, 6ull, 21ull, 7ull, 30ull}) {
        EXPECT_EQ(q40_limit(a), Rational(1, 3));
        for (unsigned terms = 1; terms <= 30; ++terms) {
            const auto b = q40_coefficient(a, terms);
            ASSERT_LE(abs(b.partial - Rational(1, 3)), b.tail_bound) << a << " J=" << terms;
            ASSERT_LT(b.partial, Rational(1, 2));
        }
    }
}

TEST(Q4l, Densities) {
    const auto d0 = q4l_density(5, 0);
    EXPECT_EQ(*d0.value, Rational(1, 3));
    EXPECT_EQ(d0.conditionality, Conditionality::kUnconditional);
    EXPECT_EQ(*q4l_density(5, 2).value, Rational(1, 3));
    const auto d1 = q4l_density(5, 1);
    EXPECT_EQ(*d1.value, Rational(1, 6));
    EXPECT_EQ(d1.conditionality, Conditionality::kGrhConditional);
    EXPECT_EQ(*q4l_density(21, 3).value, Rational(1, 6));

    const auto none = q4l_density(3, 1);
    EXPECT_FALSE(none.value);
    EXPECT_EQ(none.conditionality, Conditionality::kNoTheoreticalValue);
    EXPECT_FALSE(q4l_density(6, 3).value);
    EXPECT_EQ(*q4l_density(6, 0).value, Rational(1, 3));
    EXPECT_THROW(q4l_density(5, 4), InvalidArgument);
}

TEST(Q4l, DensitiesSumToOneWhenDefined) {
    for (std::uint64_t a : {5ull, 13ull, 21ull, 29ull}) {
        Rational total;
        for (unsigned l = 0; l < 4; ++l)
            total += *q4l_density(a, l).value;
        EXPECT_EQ(total, Rational(1));
    }
}

TEST(Tower, Construction) {
    const auto t = TowerParams::make(1, 1, 1, 5);
    EXPECT_EQ(t.k, 10u);
    EXPECT_EQ(t.k0, 10u);
    const auto m = TowerParams::make(2, 1, 3, 1, TowerKind::kM);
    EXPECT_EQ(m.k, 3u * 4 + 16);
    EXPECT_EQ(m.k0, 14u);
    EXPECT_THROW(TowerParams::make(0, 0, 1, 1), InvalidArgument);
    EXPECT_THROW(TowerParams::make(1, 0, 4, 1), InvalidArgument);
    EXPECT_THROW(TowerParams::make(1, 0, 1, 3), InvalidArgument);
}

TEST(Tower, DegreeKk) {
    const auto two = degree_Kk(5, TowerParams::make(1, 0, 1, 1));
    EXPECT_EQ(two.degree, 2u);
    EXPECT_EQ(two.eta1, Rational(1));
    const auto ten = degree_Kk(5, TowerParams::make(1, 1, 1, 1));
    EXPECT_EQ(ten.degree, 20u);
    EXPECT_EQ(ten.eta1, Rational(1, 2));
    EXPECT_EQ(degree_Kk(3, TowerParams::make(1, 0, 1, 1)).degree, 2u);
}

TEST(Tower, DegreesOfGAndGtilde) {
    const auto plain = TowerParams::make(1, 0, 1, 1);
    EXPECT_EQ(degree_G(5, plain), 2u);
    EXPECT_EQ(degree_Gtilde(5, plain), 8u);
    const auto with_n = TowerParams::make(1, 0, 5, 1);
    EXPECT_EQ(degree_G(5, with_n), 20u);
    EXPECT_EQ(degree_Gtilde(5, with_n), 80u);
}

TEST(SigmaStar, Cases) {
    // k = 10, d = 2: even d
    const auto even = sigma_star_case(5, TowerParams::make(1, 1, 1, 2), 1);
    EXPECT_EQ(even.verdict, Verdict::kZero);
    EXPECT_EQ(even.tag, CaseTag::kCase2DEven);
    EXPECT_FALSE(even.witness);

    const auto high = sigma_star_case(3, TowerParams::make(2, 0, 1, 1), 3);
    EXPECT_EQ(high.verdict, Verdict::kEqualUndetermined);
    EXPECT_EQ(to_string(high.tag), "case-1-f>=2");

    const auto one = sigma_star_case(5, TowerParams::make(1, 0, 1, 1), 3);
    EXPECT_EQ(one.verdict, Verdict::kOne);
    EXPECT_EQ(one.tag, CaseTag::kCase3F1);
    EXPECT_EQ(*one.witness, Rational(1));

    EXPECT_THROW(sigma_star_case(3, TowerParams::make(1, 0, 1, 1), 1), HypothesisViolation);
    EXPECT_THROW(sigma_star_case(5, TowerParams::make(1, 0, 1, 1), 2), InvalidArgument);
}

TEST(SigmaStar, RandomFOneTowersMeetQZeta8Trivially) {
    std::mt19937_64 rng(2024);
    std::vector<std::uint64_t> bases;
    for (auto a : squarefree_bases(200))
        if (a % 4 == 1)
            bases.push_back(a);
    int checked = 0;
    while (checked < 100) {
        const auto a = bases[rng() % bases.size()];
        const std::uint64_t l = rng() % 20;
        std::uint64_t n = 1 + rng() % 60;
        if (!is_squarefree(n))
            continue;
        const auto kind = rng() % 2 ? TowerKind::kK : TowerKind::kM;
        const auto probe = TowerParams::make(1, l, n, 1, kind);
        // odd divisors of k0
        std::vector<std::uint64_t> divisors;
        const auto odd = probe.k0 / 2;
        for (std::uint64_t d = 1; d <= odd; ++d)
            if (odd % d == 0)
                divisors.push_back(d);
        const auto d = divisors[rng() % divisors.size()];
        const auto tower = TowerParams::make(1, l, n, d, kind);
        const auto verdict = sigma_star_case(a, tower, 1 + 2 * (rng() % 2));
        ASSERT_EQ(verdict.verdict, Verdict::kOne);
        ASSERT_EQ(*verdict.witness, Rational(1));
        ++checked;
    }
}

TEST(Li, OffsetIntegral) {
    EXPECT_NEAR(li(2.0), 0.0, 1e-12);
    EXPECT_NEAR(li(1e6), 78626.504, 1e-3);
    EXPECT_NEAR(li(1e7), 664917.36, 1e-2);
    EXPECT_THROW(li(1.5), InvalidArgument);
}

} // namespace
} // namespace artin::theory
