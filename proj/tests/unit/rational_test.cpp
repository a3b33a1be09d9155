#include <gtest/gtest.h>

#include "artin/rational.hpp"

namespace artin {
namespace {

TEST(Rational, NormalizesSignAndGcd) {
    EXPECT_EQ(Rational(6, -8).str(), "-3/4");
    EXPECT_EQ(Rational(0, 5).str(), "0");
    EXPECT_EQ(Rational(7).str(), "7");
    EXPECT_EQ(Rational(10, 5), Rational(2));
    EXPECT_THROW(Rational(1, 0), InvalidArgument);
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
    EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_EQ(-Rational(2, 3), Rational(-2, 3));
    EXPECT_THROW(Rational(1) / Rational(0), InvalidArgument);
}

TEST(Rational, Ordering) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
    EXPECT_EQ(abs(Rational(-7, 3)), Rational(7, 3));
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("3/8"), Rational(3, 8));
    EXPECT_EQ(Rational::parse("-4/6"), Rational(-2, 3));
    EXPECT_EQ(Rational::parse("5"), Rational(5));
    EXPECT_THROW(Rational::parse("x/2"), InvalidArgument);
    EXPECT_THROW(Rational::parse(""), InvalidArgument);
}

TEST(Rational, PowersOfFourStayExact) {
    const auto tiny = inverse_power_of_four(60);
    EXPECT_EQ(tiny * inverse_power_of_four(1), inverse_power_of_four(61));
    EXPECT_EQ(inverse_power_of_four(0), Rational(1));
    EXPECT_NEAR(inverse_power_of_four(3).to_double(), 1.0 / 64, 1e-18);
}

} // namespace
} // namespace artin
