#pragma once

// Multiplicative order D_a(p) and residual index I_a(p) = (p-1)/D_a(p).

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "artin/errors.hpp"
#include "artin/prime_engine.hpp"

namespace artin {

using u128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % m);
}

// base^exp mod modulus with 128-bit intermediates (safe for any 64-bit modulus).
inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
    if (modulus < 2)
        throw InvalidArgument("mod_pow: modulus must be at least 2");
    std::uint64_t result = 1;
    base %= modulus;
    while (exp != 0) {
        if (exp & 1)
            result = mul_mod(result, base, modulus);
        exp >>= 1;
        if (exp != 0)
            base = mul_mod(base, base, modulus);
    }
    return result;
}

// Which primes take part in a census.
//
//   kCoprime     p does not divide a; p = 2 is included when a is odd (D = 1).
//                Densities are taken over pi(x).
//   kOddCoprime  p odd and p does not divide a. Densities are taken over the
//                number of such primes. This is the convention the published
//                tables use.
enum class EligibilityRule { kCoprime, kOddCoprime };

inline std::string_view to_string(EligibilityRule rule) {
    return rule == EligibilityRule::kCoprime ? "coprime" : "odd-coprime";
}

inline EligibilityRule parse_eligibility_rule(std::string_view s) {
    if (s == "coprime")
        return EligibilityRule::kCoprime;
    if (s == "odd-coprime")
        return EligibilityRule::kOddCoprime;
    throw InvalidArgument("unknown eligibility rule '" + std::string(s) + "'");
}

inline bool is_eligible(std::uint64_t a, std::uint64_t p,
                        EligibilityRule rule = EligibilityRule::kCoprime) {
    if (a % p == 0)
        return false;
    if (p == 2)
        return rule == EligibilityRule::kCoprime && a % 2 == 1;
    return true;
}

// Smallest D >= 1 with a^D = 1 (mod p), given the factorization of p - 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p,
                                          std::span<const PrimePower> factors) {
    if (p < 2)
        throw InvalidArgument("multiplicative_order: p must be prime");
    const std::uint64_t residue = a % p;
    if (residue == 0)
        throw UndefinedOrder("multiplicative_order: " + std::to_string(p) + " divides " +
                             std::to_string(a));
    if (p == 2)
        return 1;
    std::uint64_t order = p - 1;
    for (const auto& [q, e] : factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (mod_pow(residue, order / q, p) != 1)
                break;
            order /= q;
        }
    }
    return order;
}

inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p, const SpfTable& spf) {
    if (p == 2)
        return multiplicative_order(a, p, Factorization{});
    return multiplicative_order(a, p, factorize(p - 1, spf));
}

inline std::uint64_t residual_index(std::uint64_t p, std::uint64_t d_order) {
    const std::uint64_t group = p == 2 ? 1 : p - 1;
    if (d_order == 0 || group % d_order != 0)
        throw InternalError("residual_index: order " + std::to_string(d_order) +
                            " does not divide the group order " + std::to_string(group));
    return group / d_order;
}

struct OrderRecord {
    std::uint64_t p;
    std::uint64_t d_order;
    std::uint64_t i_index;
    unsigned v2;  // 2-adic valuation of p - 1 (0 for p = 2)

    friend bool operator==(const OrderRecord&, const OrderRecord&) = default;
};

inline unsigned two_adic_valuation(std::uint64_t n) {
    return n == 0 ? 0 : static_cast<unsigned>(std::countr_zero(n));
}

// Record for an eligible prime; std::nullopt when `p` is skipped by `rule`.
template <class Factor>
std::optional<OrderRecord> order_record(std::uint64_t a, std::uint64_t p, const Factor& factor,
                                        EligibilityRule rule = EligibilityRule::kCoprime) {
    if (!is_eligible(a, p, rule))
        return std::nullopt;
    if (p == 2)
        return OrderRecord{2, 1, 1, 0};
    const Factorization factors = factor(p - 1);
    const std::uint64_t d = multiplicative_order(a, p, factors);
    return OrderRecord{p, d, residual_index(p, d), two_adic_valuation(p - 1)};
}

inline std::optional<OrderRecord> order_record(std::uint64_t a, std::uint64_t p,
                                               const SpfTable& spf,
                                               EligibilityRule rule = EligibilityRule::kCoprime) {
    return order_record(a, p, [&](std::uint64_t n) { return factorize(n, spf); }, rule);
}

} // namespace artin
