#pragma once

// Prime generation and smallest-prime-factor tables.
//
// All tables are immutable after construction and may be shared between
// threads. Limits are capped at 2^32 - 1 so every entry fits in 32 bits.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

inline constexpr std::uint64_t kMaxTableLimit = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r)
        --r;
    while ((r + 1) <= n / (r + 1))
        ++r;
    return r;
}

// Deterministic trial-division primality check; only used for small inputs
// and cross-checks.
inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

namespace detail {

inline void check_limit(std::uint64_t limit, const char* what) {
    if (limit < 2)
        throw InvalidArgument(std::string(what) + ": limit must be at least 2");
    if (limit > kMaxTableLimit)
        throw InvalidArgument(std::string(what) + ": limit exceeds 2^32 - 1");
}

// Plain sieve for the base primes up to `limit` (small: at most ~65536).
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

} // namespace detail

// Appends the primes in [lo, hi] to `out`. `base` must contain every prime
// up to isqrt(hi). `scratch` is reused between calls to avoid reallocation.
inline void primes_in_range(std::uint64_t lo, std::uint64_t hi,
                            std::span<const std::uint32_t> base,
                            std::vector<std::uint64_t>& scratch,
                            std::vector<std::uint32_t>& out) {
    if (hi < 2 || lo > hi)
        return;
    if (lo <= 2)
        out.push_back(2);
    std::uint64_t start = std::max<std::uint64_t>(lo, 3);
    if (start % 2 == 0)
        ++start;
    if (start > hi)
        return;

    // bit i stands for the odd number start + 2i
    const std::uint64_t count = (hi - start) / 2 + 1;
    scratch.assign((count + 63) / 64, ~std::uint64_t{0});
    if (count % 64 != 0)
        scratch.back() = (std::uint64_t{1} << (count % 64)) - 1;

    for (std::uint32_t q32 : base) {
        const std::uint64_t q = q32;
        if (q == 2)
            continue;
        if (q * q > hi)
            break;
        std::uint64_t m = std::max(q * q, (start + q - 1) / q * q);
        if (m % 2 == 0)
            m += q;
        for (; m <= hi; m += 2 * q) {
            const std::uint64_t bit = (m - start) / 2;
            scratch[bit / 64] &= ~(std::uint64_t{1} << (bit % 64));
        }
    }
    for (std::size_t w = 0; w < scratch.size(); ++w) {
        std::uint64_t word = scratch[w];
        while (word != 0) {
            const int b = std::countr_zero(word);
            out.push_back(static_cast<std::uint32_t>(start + 2 * (w * 64 + b)));
            word &= word - 1;
        }
    }
}

// Base primes sufficient to sieve any range up to `limit`.
inline std::vector<std::uint32_t> base_primes_for(std::uint64_t limit) {
    return detail::small_primes(isqrt(limit));
}

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    std::size_t size() const { return primes.size(); }
};

// Segmented sieve of Eratosthenes over odd numbers. Memory is one bit per
// odd number of a segment plus the base primes; the result itself holds
// pi(limit) 32-bit entries.
inline PrimeTable sieve_primes(std::uint64_t limit,
                               std::uint64_t segment_size = kDefaultSegmentSize) {
    detail::check_limit(limit, "sieve_primes");
    if (segment_size < 2)
        throw InvalidArgument("sieve_primes: segment size must be at least 2");

    PrimeTable table;
    table.limit = limit;
    const auto base = base_primes_for(limit);
    std::vector<std::uint64_t> scratch;
    for (std::uint64_t lo = 0; lo <= limit; lo += segment_size) {
        const std::uint64_t hi = std::min(limit, lo + segment_size - 1);
        primes_in_range(lo, hi, base, scratch, table.primes);
        if (hi == limit)
            break;
    }
    return table;
}

class SpfTable {
public:
    SpfTable() = default;

    explicit SpfTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0)
                continue;
            spf_[i] = static_cast<std::uint32_t>(i);
            for (std::uint64_t j = i * i; j <= limit; j += i)
                if (spf_[j] == 0)
                    spf_[j] = static_cast<std::uint32_t>(i);
        }
    }

    std::uint64_t limit() const { return limit_; }

    std::uint32_t operator[](std::uint64_t n) const {
        if (n < 2 || n > limit_)
            throw OutOfRange("SpfTable: index " + std::to_string(n) + " outside [2, " +
                             std::to_string(limit_) + "]");
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    // Unchecked access for hot loops.
    std::uint32_t raw(std::uint64_t n) const { return spf_[n]; }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
};

inline SpfTable build_spf(std::uint64_t limit) {
    detail::check_limit(limit, "build_spf");
    return SpfTable(limit);
}

inline Factorization factorize(std::uint64_t n, const SpfTable& spf) {
    if (n < 2)
        throw InvalidArgument("factorize: n must be at least 2");
    if (n > spf.limit())
        throw OutOfRange("factorize: n = " + std::to_string(n) + " exceeds SPF limit " +
                         std::to_string(spf.limit()));
    Factorization out;
    while (n > 1) {
        const std::uint64_t q = spf.raw(n);
        unsigned e = 0;
        do {
            n /= q;
            ++e;
        } while (n % q == 0);
        out.push_back({q, e});
    }
    return out;
}

// Trial division by `primes`, which must include every prime up to isqrt(n).
inline Factorization factorize_trial(std::uint64_t n, std::span<const std::uint32_t> primes) {
    if (n < 2)
        throw InvalidArgument("factorize_trial: n must be at least 2");
    Factorization out;
    for (std::uint32_t q32 : primes) {
        const std::uint64_t q = q32;
        if (q > n / q)
            break;
        if (n % q != 0)
            continue;
        unsigned e = 0;
        do {
            n /= q;
            ++e;
        } while (n % q == 0);
        out.push_back({q, e});
    }
    if (n > 1) {
        const std::uint64_t largest = primes.empty() ? 1 : primes.back();
        if (largest < isqrt(n))
            throw OutOfRange("factorize_trial: prime list too short for cofactor " +
                             std::to_string(n));
        out.push_back({n, 1});
    }
    return out;
}

// Factors every n <= limit: through the SPF table while n fits inside it,
// otherwise by trial division over the base primes.
class Factorizer {
public:
    Factorizer(std::uint64_t limit, std::uint64_t spf_budget)
        : limit_(limit),
          spf_(std::min(limit, spf_budget) >= 2 ? build_spf(std::min(limit, spf_budget))
                                                : SpfTable{}),
          base_(base_primes_for(limit)) {}

    std::uint64_t limit() const { return limit_; }
    const SpfTable& spf() const { return spf_; }
    std::span<const std::uint32_t> base_primes() const { return base_; }

    Factorization operator()(std::uint64_t n) const {
        if (n > limit_)
            throw OutOfRange("Factorizer: n exceeds limit");
        if (n <= spf_.limit())
            return factorize(n, spf_);
        return factorize_trial(n, base_);
    }

private:
    std::uint64_t limit_;
    SpfTable spf_;
    std::vector<std::uint32_t> base_;
};

} // namespace artin
