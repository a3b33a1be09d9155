#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "artin/errors.hpp"

namespace artin {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integers
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw InvalidArgument("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(Rational a) {
        a.num_ = -a.num_;
        return a;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Rational abs(Rational r) {
        if (r.num_ < 0)
            r.num_ = -r.num_;
        return r;
    }

    double to_double() const { return num_.convert_to<long double>() / den_.convert_to<long double>(); }

    // "num/den", or just "num" when the denominator is 1.
    std::string str() const {
        if (den_ == 1)
            return num_.str();
        return num_.str() + "/" + den_.str();
    }

    static Rational parse(std::string_view text) {
        if (text.empty() || text.back() == '/' || text.front() == '/')
            throw InvalidArgument("Rational: cannot parse '" + std::string(text) + "'");
        try {
            const auto slash = text.find('/');
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(text)), BigInt(1));
            return Rational(BigInt(std::string(text.substr(0, slash))),
                            BigInt(std::string(text.substr(slash + 1))));
        } catch (const std::runtime_error&) {
            throw InvalidArgument("Rational: cannot parse '" + std::string(text) + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_.is_zero())
            throw InvalidArgument("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_ = 0;
    BigInt den_ = 1;
};

// 1 / 4^n exactly.
inline Rational inverse_power_of_four(unsigned n) {
    BigInt den = 1;
    den <<= 2 * n;
    return Rational(BigInt(1), den);
}

} // namespace artin
