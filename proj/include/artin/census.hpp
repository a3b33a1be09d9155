#pragma once

// Streaming census of D_a(p) mod k over all primes p <= x, plus the
// index-based counters (N_a(x;n;s mod t), index tail, splitting counts).
//
// Primes are produced one sieve segment at a time. Each segment is folded
// into its own accumulator and the accumulators are merged in range order,
// so results do not depend on the worker count or the segment size.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "artin/errors.hpp"
#include "artin/order_kernel.hpp"
#include "artin/prime_engine.hpp"
#include "artin/version.hpp"

namespace artin {

// 2^25 entries of 32 bits (128 MiB); p - 1 above this is trial-divided.
inline constexpr std::uint64_t kDefaultSpfBudget = std::uint64_t{1} << 25;

struct CensusOptions {
    std::uint64_t segment_size = kDefaultSegmentSize;
    unsigned workers = 1;
    EligibilityRule rule = EligibilityRule::kCoprime;
    std::uint64_t spf_budget = kDefaultSpfBudget;
};

struct PrimeRange {
    std::uint64_t lo;
    std::uint64_t hi;  // inclusive
};

// Splits [2, x] into consecutive ranges no longer than `segment_size` that
// also break at every cut point (each cut ends a range).
inline std::vector<PrimeRange> make_ranges(std::uint64_t x, std::span<const std::uint64_t> cuts,
                                           std::uint64_t segment_size) {
    if (segment_size < 2)
        throw InvalidArgument("segment size must be at least 2");
    std::vector<std::uint64_t> ends(cuts.begin(), cuts.end());
    ends.push_back(x);
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

    std::vector<PrimeRange> out;
    std::uint64_t lo = 2;
    for (std::uint64_t end : ends) {
        if (end > x)
            break;
        while (lo <= end) {
            const std::uint64_t hi = std::min(end, lo + segment_size - 1);
            out.push_back({lo, hi});
            lo = hi + 1;
        }
    }
    return out;
}

// Folds every prime of every range into a per-range accumulator.
// `fold(acc, p, record)` receives a null record for primes the rule excludes.
template <class Acc, class Fold>
std::vector<Acc> scan_ranges(std::uint64_t a, std::span<const PrimeRange> ranges,
                             const CensusOptions& options, const Acc& init, Fold fold) {
    if (a < 2)
        throw InvalidArgument("a must be at least 2");
    std::vector<Acc> results(ranges.size(), init);
    if (ranges.empty())
        return results;
    std::uint64_t top = 2;
    for (const auto& r : ranges)
        top = std::max(top, r.hi);
    if (top > kMaxTableLimit)
        throw InvalidArgument("x exceeds 2^32 - 1");

    const Factorizer factor(top, options.spf_budget);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        std::vector<std::uint64_t> scratch;
        std::vector<std::uint32_t> primes;
        try {
            for (std::size_t i = next++; i < ranges.size(); i = next++) {
                primes.clear();
                primes_in_range(ranges[i].lo, ranges[i].hi, factor.base_primes(), scratch, primes);
                Acc& acc = results[i];
                for (std::uint32_t p : primes) {
                    const auto rec = order_record(a, p, factor, options.rule);
                    fold(acc, p, rec ? &*rec : nullptr);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = ranges.size();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, ranges.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

// Single accumulator over all primes <= x.
template <class Acc, class Fold, class Merge>
Acc scan_primes(std::uint64_t a, std::uint64_t x, const CensusOptions& options, const Acc& init,
                Fold fold, Merge merge) {
    if (x < 2)
        throw InvalidArgument("x must be at least 2");
    const auto ranges = make_ranges(x, {}, options.segment_size);
    auto parts = scan_ranges(a, ranges, options, init, fold);
    Acc total = init;
    for (const auto& part : parts)
        merge(total, part);
    return total;
}

struct CountVector {
    std::uint64_t modulus = 4;
    std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(4, 0);
    std::uint64_t excluded = 0;
    std::uint64_t pi_x = 0;
    EligibilityRule rule = EligibilityRule::kCoprime;

    CountVector() = default;
    CountVector(std::uint64_t k, EligibilityRule r) : modulus(k), counts(k, 0), rule(r) {}

    std::uint64_t eligible() const { return pi_x - excluded; }

    // pi(x) under kCoprime, the number of eligible primes under kOddCoprime.
    std::uint64_t denominator() const {
        return rule == EligibilityRule::kCoprime ? pi_x : eligible();
    }

    void add(const OrderRecord* record) {
        ++pi_x;
        if (record)
            ++counts[record->d_order % modulus];
        else
            ++excluded;
    }

    CountVector& operator+=(const CountVector& o) {
        if (o.modulus != modulus || o.rule != rule)
            throw InvalidArgument("CountVector: merging incompatible vectors");
        for (std::size_t l = 0; l < counts.size(); ++l)
            counts[l] += o.counts[l];
        excluded += o.excluded;
        pi_x += o.pi_x;
        return *this;
    }

    bool consistent() const {
        std::uint64_t total = excluded;
        for (auto c : counts)
            total += c;
        return counts.size() == modulus && total == pi_x;
    }

    friend bool operator==(const CountVector&, const CountVector&) = default;
};

struct Checkpoint {
    std::uint64_t x;
    CountVector counts;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct CensusReport {
    std::uint64_t a = 0;
    std::uint64_t k = 4;
    EligibilityRule rule = EligibilityRule::kCoprime;
    std::vector<Checkpoint> checkpoints;
    std::string tool_version = std::string(kToolVersion);
    std::optional<std::string> timestamp;

    friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

// Powers of ten from 10^3 up to x, and x itself.
inline std::vector<std::uint64_t> default_checkpoints(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 1000; c <= x; c *= 10) {
        out.push_back(c);
        if (c > x / 10)
            break;
    }
    if (out.empty() || out.back() != x)
        out.push_back(x);
    return out;
}

inline CensusReport census(std::uint64_t a, std::uint64_t k, std::uint64_t x,
                           std::vector<std::uint64_t> checkpoints,
                           const CensusOptions& options = {}) {
    if (k < 2)
        throw InvalidArgument("census: modulus k must be at least 2");
    if (x < 2)
        throw InvalidArgument("census: x must be at least 2");
    for (auto c : checkpoints)
        if (c == 0 || c > x)
            throw InvalidArgument("census: checkpoint " + std::to_string(c) + " outside (0, x]");
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    if (checkpoints.empty() || checkpoints.back() != x)
        checkpoints.push_back(x);

    const auto ranges = make_ranges(x, checkpoints, options.segment_size);
    const CountVector zero(k, options.rule);
    const auto parts = scan_ranges(a, ranges, options, zero,
                                   [](CountVector& acc, std::uint64_t, const OrderRecord* rec) {
                                       acc.add(rec);
                                   });

    CensusReport report;
    report.a = a;
    report.k = k;
    report.rule = options.rule;
    CountVector running = zero;
    std::size_t part = 0;
    for (auto c : checkpoints) {
        while (part < ranges.size() && ranges[part].hi <= c)
            running += parts[part++];
        report.checkpoints.push_back({c, running});
    }
    return report;
}

// #{eligible p <= x : I_a(p) = n, p = s mod t}; s is taken mod t.
inline std::uint64_t count_N(std::uint64_t a, std::uint64_t n, std::uint64_t s, std::uint64_t t,
                             std::uint64_t x, const CensusOptions& options = {}) {
    if (t < 1)
        throw InvalidArgument("count_N: modulus t must be at least 1");
    s %= t;
    return scan_primes(
        a, x, options, std::uint64_t{0},
        [=](std::uint64_t& acc, std::uint64_t p, const OrderRecord* rec) {
            if (rec && rec->i_index == n && p % t == s)
                ++acc;
        },
        [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
}

// #{eligible p <= x : I_a(p) >= psi}
inline std::uint64_t index_tail(std::uint64_t a, std::uint64_t x, std::uint64_t psi,
                                const CensusOptions& options = {}) {
    if (psi < 1)
        throw InvalidArgument("index_tail: psi must be at least 1");
    return scan_primes(
        a, x, options, std::uint64_t{0},
        [=](std::uint64_t& acc, std::uint64_t, const OrderRecord* rec) {
            if (rec && rec->i_index >= psi)
                ++acc;
        },
        [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
}

// #{eligible p <= x : p = 1 mod 2^i and 2^j | I_a(p)}; these are the primes
// splitting completely in Q(zeta_{2^i}, zeta_{2^j}, a^{1/2^j}).
inline std::uint64_t count_split(std::uint64_t a, unsigned i, unsigned j, std::uint64_t x,
                                 const CensusOptions& options = {}) {
    if (i < 1)
        throw InvalidArgument("count_split: i must be at least 1");
    if (i >= 63 || j >= 63)
        return 0;  // no prime below 2^32 qualifies
    const std::uint64_t mod_p = std::uint64_t{1} << i;
    const std::uint64_t mod_i = std::uint64_t{1} << j;
    return scan_primes(
        a, x, options, std::uint64_t{0},
        [=](std::uint64_t& acc, std::uint64_t p, const OrderRecord* rec) {
            if (rec && p % mod_p == 1 && rec->i_index % mod_i == 0)
                ++acc;
        },
        [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
}

} // namespace artin
