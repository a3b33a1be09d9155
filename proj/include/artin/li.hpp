#pragma once

#include <cmath>

#include "artin/errors.hpp"

namespace artin {

// li(x) = PV integral_0^x dt / log t, via Ramanujan's series.
inline double li_principal(double x) {
    if (!(x > 1.0))
        throw InvalidArgument("li: x must exceed 1");
    constexpr long double kEulerGamma = 0.57721566490153286060651209L;
    const long double lx = std::log(static_cast<long double>(x));
    long double sum = 0.0L;
    long double inner = 0.0L;  // sum_{k <= (n-1)/2} 1/(2k+1)
    long double power = 1.0L;  // (ln x)^n / (n! 2^{n-1})
    for (int n = 1; n < 400; ++n) {
        power *= lx / n;
        if (n > 1)
            power /= 2;
        if ((n - 1) % 2 == 0)
            inner += 1.0L / (n);  // 2k + 1 == n for k = (n-1)/2
        const long double term = (n % 2 == 1 ? 1 : -1) * power * inner;
        sum += term;
        if (std::fabs(term) < 1e-21L * std::fabs(sum))
            break;
    }
    return static_cast<double>(kEulerGamma + std::log(lx) + std::sqrt(static_cast<long double>(x)) * sum);
}

// Offset logarithmic integral: integral_2^x dt / log t.
inline double li(double x) {
    if (x < 2.0)
        throw InvalidArgument("li: x must be at least 2");
    return li_principal(x) - li_principal(2.0);
}

} // namespace artin
