#pragma once

// Exact check of the four decompositions of #Q_a(x;4,l) into counts that
// only involve the residual index I_a(p) and congruences on p:
//
//   l=0   #{p = 1 (4)} - sum_j #{p = 1 (2^{j+1}), 2^j | I} + sum_j #{p = 1 (2^{j+2}), 2^j | I}
//   l=2   sum_j #{p = 1 (2^j), 2^{j-1} | I} - #{p = 1 (2^{j+1}), 2^{j-1} | I}
//               - #{p = 1 (2^j), 2^j | I} + #{p = 1 (2^{j+1}), 2^j | I}
//   l=1   sum_{f,l} N(2^f + l 2^{f+2}; 1 + 2^f) + N(3 2^f + l 2^{f+2}; 1 + 3 2^f)
//   l=3   sum_{f,l} N(3 2^f + l 2^{f+2}; 1 + 2^f) + N(2^f + l 2^{f+2}; 1 + 3 2^f)
//
// where N(n; s) counts p with I_a(p) = n and p = s mod 2^{f+2}. The left
// sides come from D_a(p) mod 4 directly; the right sides are read from
// tables indexed by (v2(p-1), v2(I)) and by (I, p mod 2^{v2(I)+2}), which
// are filled without looking at D. Only odd primes not dividing a take part.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "artin/census.hpp"
#include "artin/errors.hpp"
#include "artin/order_kernel.hpp"

namespace artin {

// I_a(p) = 2^f (mod 2^{f+2}) or I_a(p) = 3 2^f (mod 2^{f+2}).
enum class IndexBranch { kOnce = 1, kThrice = 3 };

inline std::string_view to_string(IndexBranch b) {
    return b == IndexBranch::kOnce ? "I=2^f" : "I=3*2^f";
}

struct ClassifiedPrime {
    OrderRecord record;
    unsigned l4;             // D mod 4, either 1 or 3
    unsigned f;              // 2^f || I
    IndexBranch branch;
    std::uint64_t modulus;   // 2^{f+2}
    std::uint64_t residue;   // p mod 2^{f+2}
};

// Places a prime with odd order in the index sets of the l = 1 / l = 3
// decompositions. With p - 1 = 2^f u D (u odd), p = 1 + 2^f (uD mod 4) mod
// 2^{f+2}: D = 1 pairs the branches straight, D = 3 crosswise.
inline ClassifiedPrime classify_l1_l3(const OrderRecord& record) {
    if (record.d_order % 2 == 0)
        throw InvalidArgument("classify_l1_l3: order " + std::to_string(record.d_order) +
                              " is even");
    if (record.p == 2)
        throw InvalidArgument("classify_l1_l3: p = 2 has no index class");
    const unsigned f = two_adic_valuation(record.i_index);
    if (f != record.v2)
        throw InternalError("classify_l1_l3: 2-adic valuations of I and p - 1 differ for p = " +
                            std::to_string(record.p));
    const auto u = static_cast<unsigned>((record.i_index >> f) % 4);
    const auto branch = static_cast<IndexBranch>(u);
    const unsigned l4 = static_cast<unsigned>(record.d_order % 4);
    const std::uint64_t modulus = std::uint64_t{1} << (f + 2);
    const std::uint64_t unit = std::uint64_t{1} << f;
    const std::uint64_t paired = l4 == 1 ? u : 4 - u;
    const std::uint64_t expected = (1 + paired * unit) % modulus;
    const std::uint64_t residue = record.p % modulus;
    if (residue != expected)
        throw InternalError("classify_l1_l3: p = " + std::to_string(record.p) +
                            " breaks the residue pairing");
    return {record, l4, f, branch, modulus, residue};
}

struct IdentityCheck {
    unsigned l;
    std::uint64_t lhs;
    std::int64_t rhs;

    bool holds() const { return rhs >= 0 && static_cast<std::uint64_t>(rhs) == lhs; }
};

struct SieveIdentityReport {
    std::uint64_t a = 0;
    std::uint64_t x = 0;
    std::array<IdentityCheck, 4> identities{};  // l = 0, 2, 1, 3
    // (f, branch) -> number of classified primes with odd order
    std::map<std::pair<unsigned, IndexBranch>, std::uint64_t> classified;
    std::uint64_t classified_total = 0;
    std::uint64_t odd_order_total = 0;  // counts[1] + counts[3]

    bool partition_holds() const { return classified_total == odd_order_total; }
    bool all_hold() const {
        for (const auto& id : identities)
            if (!id.holds())
                return false;
        return partition_holds();
    }
};

namespace detail {

inline constexpr std::size_t kValuationSlots = 40;

struct IdentityAccumulator {
    std::array<std::uint64_t, 4> by_class{};
    // split[i][j] = #{p : 2^i | p - 1, 2^j | I}
    std::array<std::array<std::uint64_t, kValuationSlots>, kValuationSlots> split{};
    // (I, p mod 2^{v2(I)+2}) -> count
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> index_residue;
    std::map<std::pair<unsigned, IndexBranch>, std::uint64_t> classified;

    void add(std::uint64_t p, const OrderRecord& rec) {
        ++by_class[rec.d_order % 4];

        const unsigned tp = rec.v2;
        const unsigned ti = two_adic_valuation(rec.i_index);
        for (unsigned i = 0; i <= tp; ++i)
            for (unsigned j = 0; j <= ti; ++j)
                ++split[i][j];

        const std::uint64_t t = std::uint64_t{1} << (ti + 2);
        ++index_residue[{rec.i_index, p % t}];

        if (rec.d_order % 2 == 1) {
            const auto c = classify_l1_l3(rec);
            ++classified[{c.f, c.branch}];
        }
    }

    void merge(const IdentityAccumulator& o) {
        for (std::size_t l = 0; l < 4; ++l)
            by_class[l] += o.by_class[l];
        for (std::size_t i = 0; i < kValuationSlots; ++i)
            for (std::size_t j = 0; j < kValuationSlots; ++j)
                split[i][j] += o.split[i][j];
        for (const auto& [key, count] : o.index_residue)
            index_residue[key] += count;
        for (const auto& [key, count] : o.classified)
            classified[key] += count;
    }

    std::int64_t split_count(unsigned i, unsigned j) const {
        if (i >= kValuationSlots || j >= kValuationSlots)
            return 0;
        return static_cast<std::int64_t>(split[i][j]);
    }

    std::int64_t n_count(std::uint64_t n, std::uint64_t s, unsigned f) const {
        const std::uint64_t t = std::uint64_t{1} << (f + 2);
        const auto it = index_residue.find({n, s % t});
        return it == index_residue.end() ? 0 : static_cast<std::int64_t>(it->second);
    }
};

} // namespace detail

inline SieveIdentityReport verify_sieve_identities(std::uint64_t a, std::uint64_t x,
                                                   CensusOptions options = {}) {
    if (x < 3)
        throw InvalidArgument("verify_sieve_identities: x must be at least 3");
    options.rule = EligibilityRule::kOddCoprime;
    const auto acc = scan_primes(
        a, x, options, detail::IdentityAccumulator{},
        [](detail::IdentityAccumulator& acc, std::uint64_t p, const OrderRecord* rec) {
            if (rec)
                acc.add(p, *rec);
        },
        [](detail::IdentityAccumulator& total, const detail::IdentityAccumulator& part) {
            total.merge(part);
        });

    // every term with 2^j > x is empty
    unsigned jmax = 0;
    while (jmax + 1 < 63 && (std::uint64_t{1} << (jmax + 1)) <= x)
        ++jmax;

    std::int64_t rhs0 = acc.split_count(2, 0);
    std::int64_t rhs2 = 0;
    for (unsigned j = 1; j <= jmax; ++j) {
        rhs0 -= acc.split_count(j + 1, j);
        rhs0 += acc.split_count(j + 2, j);
        rhs2 += acc.split_count(j, j - 1);
        rhs2 -= acc.split_count(j + 1, j - 1);
        rhs2 -= acc.split_count(j, j);
        rhs2 += acc.split_count(j + 1, j);
    }

    std::int64_t rhs1 = 0;
    std::int64_t rhs3 = 0;
    for (unsigned f = 1; f <= jmax; ++f) {
        const std::uint64_t unit = std::uint64_t{1} << f;
        const std::uint64_t step = unit << 2;
        for (std::uint64_t n = unit; n <= x; n += step) {
            rhs1 += acc.n_count(n, 1 + unit, f);
            rhs3 += acc.n_count(n, 1 + 3 * unit, f);
        }
        for (std::uint64_t n = 3 * unit; n <= x; n += step) {
            rhs1 += acc.n_count(n, 1 + 3 * unit, f);
            rhs3 += acc.n_count(n, 1 + unit, f);
        }
    }

    SieveIdentityReport report;
    report.a = a;
    report.x = x;
    report.identities = {IdentityCheck{0, acc.by_class[0], rhs0},
                         IdentityCheck{2, acc.by_class[2], rhs2},
                         IdentityCheck{1, acc.by_class[1], rhs1},
                         IdentityCheck{3, acc.by_class[3], rhs3}};
    report.classified = acc.classified;
    for (const auto& [key, count] : acc.classified)
        report.classified_total += count;
    report.odd_order_total = acc.by_class[1] + acc.by_class[3];
    return report;
}

} // namespace artin
