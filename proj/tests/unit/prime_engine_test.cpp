#include <random>

#include <gtest/gtest.h>

#include "artin/prime_engine.hpp"
#include "oracles.hpp"

namespace artin {
namespace {

TEST(SievePrimes, SmallLimits) {
    EXPECT_EQ(sieve_primes(10).primes, (std::vector<std::uint32_t>{2, 3, 5, 7}));
    EXPECT_EQ(sieve_primes(2).primes, (std::vector<std::uint32_t>{2}));
    EXPECT_EQ(sieve_primes(3).primes, (std::vector<std::uint32_t>{2, 3}));
}

TEST(SievePrimes, RejectsLimitBelowTwo) {
    EXPECT_THROW(sieve_primes(1), InvalidArgument);
    EXPECT_THROW(sieve_primes(0), InvalidArgument);
    EXPECT_THROW(build_spf(1), InvalidArgument);
}

TEST(SievePrimes, MatchesTrialDivisionUpTo20000) {
    const auto table = sieve_primes(20000);
    const auto expected = oracle::primes_upto(20000);
    ASSERT_EQ(table.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_EQ(table.primes[i], expected[i]);
}

TEST(SievePrimes, PiOfTenToTheSeven) {
    // pi(10^7) = 664579; cross-checked against the SPF table below
    const auto table = sieve_primes(10'000'000);
    EXPECT_EQ(table.size(), 664579u);
    EXPECT_EQ(table.primes.front(), 2u);
    EXPECT_EQ(table.primes.back(), 9999991u);
}

TEST(SievePrimes, SegmentSizeDoesNotMatter) {
    const auto reference = sieve_primes(200'000).primes;
    for (std::uint64_t seg : {2ull, 3ull, 64ull, 1000ull, 65537ull, 1ull << 20})
        EXPECT_EQ(sieve_primes(200'000, seg).primes, reference) << "segment " << seg;
}

TEST(SpfTable, Examples) {
    const auto spf = build_spf(10'000'000);
    EXPECT_EQ(spf[12], 2u);
    EXPECT_EQ(spf[9999991 - 1], 2u);
    EXPECT_EQ(spf[243], 3u);
    EXPECT_EQ(spf[9999991], 9999991u);
    EXPECT_THROW(spf[10'000'001], OutOfRange);
}

TEST(SpfTable, AgreesWithSieve) {
    const std::uint64_t limit = 300'000;
    const auto spf = build_spf(limit);
    const auto primes = sieve_primes(limit).primes;
    std::vector<std::uint32_t> from_spf;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        ASSERT_EQ(n % spf[n], 0u);
        ASSERT_TRUE(spf.is_prime(spf[n])) << n;
        if (n < 5000) {
            ASSERT_TRUE(oracle::is_prime(spf[n])) << n;
        }
        if (spf.is_prime(n))
            from_spf.push_back(static_cast<std::uint32_t>(n));
    }
    EXPECT_EQ(from_spf, primes);
}

TEST(Factorize, Examples) {
    const auto spf = build_spf(1000);
    EXPECT_EQ(factorize(360, spf), (Factorization{{2, 3}, {3, 2}, {5, 1}}));
    EXPECT_EQ(factorize(10, spf), (Factorization{{2, 1}, {5, 1}}));
    EXPECT_EQ(factorize(2, spf), (Factorization{{2, 1}}));
    EXPECT_THROW(factorize(1001, spf), OutOfRange);
    EXPECT_THROW(factorize(1, spf), InvalidArgument);
}

std::uint64_t product(const Factorization& f) {
    std::uint64_t n = 1;
    for (const auto& [q, e] : f)
        for (unsigned i = 0; i < e; ++i)
            n *= q;
    return n;
}

TEST(Factorize, RandomReconstruction) {
    const std::uint64_t limit = 2'000'000;
    const auto spf = build_spf(limit);
    const auto base = base_primes_for(limit);
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::uint64_t> dist(2, limit);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = dist(rng);
        const auto f = factorize(n, spf);
        ASSERT_EQ(product(f), n);
        for (std::size_t i = 1; i < f.size(); ++i)
            ASSERT_LT(f[i - 1].prime, f[i].prime);
        ASSERT_EQ(factorize_trial(n, base), f);
    }
}

TEST(Factorizer, FallsBackToTrialDivisionAboveBudget) {
    const Factorizer small(1'000'000, 1000);  // table covers only n <= 1000
    const auto spf = build_spf(1'000'000);
    for (std::uint64_t n : {999'983ull - 1, 524'288ull, 999'999ull, 17ull, 1000ull, 1001ull})
        EXPECT_EQ(small(n), factorize(n, spf)) << n;
    EXPECT_THROW(small(1'000'001), OutOfRange);
}

TEST(FactorizeTrial, ShortPrimeListIsAnError) {
    const std::vector<std::uint32_t> few{2, 3};
    EXPECT_THROW(factorize_trial(7 * 11, few), OutOfRange);
    EXPECT_EQ(factorize_trial(24, few), (Factorization{{2, 3}, {3, 1}}));
}

} // namespace
} // namespace artin
