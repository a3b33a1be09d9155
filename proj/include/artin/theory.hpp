#pragma once

// Exact field degrees and density constants.
//
// Everything here is integer or Rational arithmetic. The Kummer fields are
// Q(zeta_r, a^{1/m}) with a a squarefree integer >= 3 and a^{1/m} the real
// root.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "artin/errors.hpp"
#include "artin/prime_engine.hpp"
#include "artin/rational.hpp"

namespace artin::theory {

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
    std::uint64_t out;
    if (__builtin_mul_overflow(x, y, &out))
        throw OutOfRange("field degree does not fit in 64 bits");
    return out;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace detail

inline bool is_squarefree(std::uint64_t n) {
    if (n == 0)
        return false;
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q != 0)
            continue;
        n /= q;
        if (n % q == 0)
            return false;
    }
    return true;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0)
        throw InvalidArgument("euler_phi: n must be positive");
    std::uint64_t result = n;
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q != 0)
            continue;
        while (n % q == 0)
            n /= q;
        result -= result / q;
    }
    if (n > 1)
        result -= result / n;
    return result;
}

inline int mobius(std::uint64_t n) {
    if (n == 0)
        throw InvalidArgument("mobius: n must be positive");
    int sign = 1;
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q != 0)
            continue;
        n /= q;
        if (n % q == 0)
            return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

// Product of the distinct primes dividing n.
inline std::uint64_t core(std::uint64_t n) {
    if (n == 0)
        throw InvalidArgument("core: n must be positive");
    std::uint64_t result = 1;
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q != 0)
            continue;
        result *= q;
        while (n % q == 0)
            n /= q;
    }
    return n > 1 ? result * n : result;
}

inline void require_hypotheses(std::uint64_t a) {
    if (a < 3)
        throw HypothesisViolation("a = " + std::to_string(a) + " is below 3");
    if (!is_squarefree(a))
        throw HypothesisViolation("a = " + std::to_string(a) + " is not squarefree");
}

struct KummerParams {
    std::uint64_t a;
    std::uint64_t r;  // cyclotomic level
    std::uint64_t m;  // radical exponent

    // a = a1 * a2^2 with a1 squarefree; equal to a under the hypotheses.
    std::uint64_t a1() const {
        std::uint64_t n = a, square = 1;
        for (std::uint64_t q = 2; q <= n / q; ++q)
            while (n % (q * q) == 0) {
                n /= q * q;
                square *= q;
            }
        return a / (square * square);
    }
    std::uint64_t h1() const { return a1() % 4 == 1 ? 2 * a1() : 4 * a1(); }
    // Conductor of Q(sqrt(a)).
    std::uint64_t conductor() const { return a1() % 4 == 1 ? a1() : 4 * a1(); }
    bool m_divides_r() const { return r % m == 0; }
};

struct KummerDegree {
    std::uint64_t value;
    bool halved;       // sqrt(a) already lies in Q(zeta_r)
    bool generalized;  // computed for m not dividing r

    friend bool operator==(const KummerDegree&, const KummerDegree&) = default;
};

// [Q(zeta_r, a^{1/m}) : Q] = m * phi(r) / eps, where eps = 2 exactly when m
// is even and sqrt(a) lies in Q(zeta_r). For m | r this is the classical
// three-case formula with h1 | r; for m not dividing r the same rule is
// applied through the conductor of Q(sqrt(a)) and the result is flagged.
inline KummerDegree kummer_degree(const KummerParams& params) {
    require_hypotheses(params.a);
    if (params.r == 0 || params.m == 0)
        throw InvalidArgument("kummer_degree: r and m must be positive");
    const std::uint64_t full = detail::checked_mul(params.m, euler_phi(params.r));
    const bool halved = params.m % 2 == 0 && params.r % params.conductor() == 0;
    return {halved ? full / 2 : full, halved, !params.m_divides_r()};
}

// q / (q^2 - 1) for a prime q.
inline Rational hasse_density(std::uint64_t q) {
    if (!is_prime(q))
        throw InvalidArgument("hasse_density: q = " + std::to_string(q) + " is not prime");
    const auto qq = static_cast<std::int64_t>(q);
    return Rational(qq, qq * qq - 1);
}

struct SeriesBracket {
    Rational partial;
    Rational tail_bound;  // |limit - partial| <= tail_bound
};

// Degree of K_{i,j} = Q(zeta_{2^i}, zeta_{2^j}, a^{1/2^j}) for i >= j.
inline std::uint64_t two_power_kummer_degree(std::uint64_t a, unsigned i, unsigned j) {
    if (i < j || i >= 63)
        throw InvalidArgument("two_power_kummer_degree: need j <= i < 63");
    return kummer_degree({a, std::uint64_t{1} << i, std::uint64_t{1} << j}).value;
}

// Coefficient of li x in #Q_a(x;4,0):
//   1/phi(4) - sum_{j>=1} (1/[K_{j+1,j}:Q] - 1/[K_{j+2,j}:Q]),
// truncated after `terms` summands. Each omitted summand is at most 4^-j / 2.
inline SeriesBracket q40_coefficient(std::uint64_t a, unsigned terms) {
    require_hypotheses(a);
    if (terms < 1)
        throw InvalidArgument("q40_coefficient: need at least one term");
    if (terms > 30)
        throw InvalidArgument("q40_coefficient: at most 30 terms (degrees must fit in 64 bits)");
    Rational partial(1, 2);
    for (unsigned j = 1; j <= terms; ++j) {
        const auto lower = static_cast<std::int64_t>(two_power_kummer_degree(a, j + 1, j));
        const auto upper = static_cast<std::int64_t>(two_power_kummer_degree(a, j + 2, j));
        partial -= Rational(1, lower) - Rational(1, upper);
    }
    return {partial, inverse_power_of_four(terms)};
}

// Exact limit of the series above. Halving in the 2-power Kummer fields needs
// h1 | 2^i, which cannot happen for squarefree a >= 3, so every summand is
// 4^-j / 2 and the tail after the first term is 4^-1 / 6.
inline Rational q40_limit(std::uint64_t a) {
    require_hypotheses(a);
    if (detail::is_power_of_two(KummerParams{a, 1, 1}.h1()))
        throw InternalError("q40_limit: h1 is a power of two");
    return q40_coefficient(a, 1).partial - inverse_power_of_four(1) / Rational(6);
}

enum class Conditionality { kUnconditional, kGrhConditional, kNoTheoreticalValue };

inline std::string_view to_string(Conditionality c) {
    switch (c) {
    case Conditionality::kUnconditional:
        return "unconditional";
    case Conditionality::kGrhConditional:
        return "GRH-conditional";
    case Conditionality::kNoTheoreticalValue:
        return "no-theoretical-value";
    }
    return "?";
}

struct DensityResult {
    std::optional<Rational> value;
    Conditionality conditionality;
};

// Natural density of {p : D_a(p) = l mod 4}.
inline DensityResult q4l_density(std::uint64_t a, unsigned l) {
    if (l > 3)
        throw InvalidArgument("q4l_density: l must be in 0..3");
    require_hypotheses(a);
    const Rational d0 = q40_limit(a);
    const Rational d2 = hasse_density(2) - d0;
    switch (l) {
    case 0:
        return {d0, Conditionality::kUnconditional};
    case 2:
        return {d2, Conditionality::kUnconditional};
    default:
        if (a % 4 != 1)
            return {std::nullopt, Conditionality::kNoTheoreticalValue};
        // classes 1 and 3 share what is left equally
        return {(Rational(1) - d0 - d2) / Rational(2), Conditionality::kGrhConditional};
    }
}

// k = 2^f + l 2^{f+2} (kind kK) or m = 3 2^f + l 2^{f+2} (kind kM), with its
// core k0, a squarefree n and a divisor d of k0.
enum class TowerKind { kK, kM };

struct TowerParams {
    unsigned f = 1;
    std::uint64_t l = 0;
    TowerKind kind = TowerKind::kK;
    std::uint64_t k = 2;
    std::uint64_t k0 = 2;
    std::uint64_t n = 1;
    std::uint64_t d = 1;

    static TowerParams make(unsigned f, std::uint64_t l, std::uint64_t n, std::uint64_t d,
                            TowerKind kind = TowerKind::kK) {
        if (f < 1 || f > 40)
            throw InvalidArgument("tower: f must be in 1..40");
        if (n < 1 || !is_squarefree(n))
            throw InvalidArgument("tower: n must be squarefree and positive");
        TowerParams t;
        t.f = f;
        t.l = l;
        t.kind = kind;
        const std::uint64_t unit = std::uint64_t{1} << f;
        t.k = (kind == TowerKind::kK ? unit : 3 * unit) + detail::checked_mul(l, 4 * unit);
        t.k0 = core(t.k);
        t.n = n;
        if (d < 1 || t.k0 % d != 0)
            throw InvalidArgument("tower: d must divide the core of k");
        t.d = d;
        return t;
    }
};

struct KkDegree {
    std::uint64_t degree;
    Rational eta1;  // degree / (k phi(k0)), either 1 or 1/2
};

// [Q(zeta_{k0}, a^{1/k}) : Q].
inline KkDegree degree_Kk(std::uint64_t a, const TowerParams& tower) {
    const auto deg = kummer_degree({a, tower.k0, tower.k}).value;
    const auto base = detail::checked_mul(tower.k, euler_phi(tower.k0));
    return {deg, Rational(static_cast<std::int64_t>(deg), static_cast<std::int64_t>(base))};
}

// G = K_k(zeta_n, a^{1/kn}, zeta_{kd}) = Q(zeta_{lcm(n, kd)}, a^{1/kn}).
inline std::uint64_t degree_G(std::uint64_t a, const TowerParams& tower) {
    const std::uint64_t r = std::lcm(tower.n, detail::checked_mul(tower.k, tower.d));
    return kummer_degree({a, r, detail::checked_mul(tower.k, tower.n)}).value;
}

// G~ = G(zeta_{2^{f+2}}).
inline std::uint64_t degree_Gtilde(std::uint64_t a, const TowerParams& tower) {
    const std::uint64_t r = std::lcm(std::lcm(tower.n, detail::checked_mul(tower.k, tower.d)),
                                     std::uint64_t{1} << (tower.f + 2));
    return kummer_degree({a, r, detail::checked_mul(tower.k, tower.n)}).value;
}

enum class Verdict { kZero, kOne, kEqualUndetermined };
enum class CaseTag { kCase2DEven, kCase3F1, kCase1FAtLeast2 };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::kZero:
        return "Zero";
    case Verdict::kOne:
        return "One";
    case Verdict::kEqualUndetermined:
        return "EqualUndetermined";
    }
    return "?";
}

inline std::string_view to_string(CaseTag t) {
    switch (t) {
    case CaseTag::kCase2DEven:
        return "case-2-d-even";
    case CaseTag::kCase3F1:
        return "case-3-f1";
    case CaseTag::kCase1FAtLeast2:
        return "case-1-f>=2";
    }
    return "?";
}

struct CaseVerdict {
    Verdict verdict;
    CaseTag tag;
    // [G ∩ Q(zeta_8) : Q] = [G:Q] * 4 / [G~:Q], only for the f = 1 case
    std::optional<Rational> witness;
};

// Whether the automorphism of G~/K_k that is the identity on G and sends
// zeta_{2^{f+2}} to zeta^{1 + target 2^f} exists (c_target(k, n, d)).
inline CaseVerdict sigma_star_case(std::uint64_t a, const TowerParams& tower, unsigned target) {
    if (target != 1 && target != 3)
        throw InvalidArgument("sigma_star_case: target must be 1 or 3");
    require_hypotheses(a);
    // 2^{f+1} | kd, so fixing zeta_{kd} contradicts moving zeta_{2^{f+2}}
    if (tower.d % 2 == 0)
        return {Verdict::kZero, CaseTag::kCase2DEven, std::nullopt};
    // the cube of one automorphism is the other; only equality is known
    if (tower.f >= 2)
        return {Verdict::kEqualUndetermined, CaseTag::kCase1FAtLeast2, std::nullopt};
    if (a % 4 != 1)
        throw HypothesisViolation("sigma_star_case: f = 1 with d odd needs a = 1 mod 4");
    const auto g = static_cast<std::int64_t>(degree_G(a, tower));
    const auto gt = static_cast<std::int64_t>(degree_Gtilde(a, tower));
    Rational witness = Rational(g * 4, gt);
    if (witness != Rational(1))
        throw InternalError("sigma_star_case: G meets Q(zeta_8) in degree " + witness.str());
    return {Verdict::kOne, CaseTag::kCase3F1, witness};
}

} // namespace artin::theory
