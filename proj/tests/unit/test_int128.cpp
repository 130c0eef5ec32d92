#include <gtest/gtest.h>

#include "sconv/error.hpp"
#include "sconv/int128.hpp"
#include "sconv/rational.hpp"

using namespace sconv;

namespace {

const Int kMax = ~(static_cast<Int>(1) << 127);
const Int kMin = static_cast<Int>(1) << 127;

}  // namespace

TEST(Int128, ToStringRoundTrip) {
  EXPECT_EQ(to_string(0), "0");
  EXPECT_EQ(to_string(-42), "-42");
  EXPECT_EQ(to_string(kMax), "170141183460469231731687303715884105727");
  EXPECT_EQ(to_string(kMin), "-170141183460469231731687303715884105728");
  for (const Int v : {Int{0}, Int{7}, Int{-7}, kMax, kMin, checked_pow(10, 30)}) {
    EXPECT_EQ(parse_int(to_string(v)), v);
  }
}

TEST(Int128, ParseRejectsGarbage) {
  EXPECT_THROW(parse_int(""), ParseError);
  EXPECT_THROW(parse_int("12a"), ParseError);
  EXPECT_THROW(parse_int("-"), ParseError);
  EXPECT_THROW(parse_int("170141183460469231731687303715884105728"), OverflowError);
}

TEST(Int128, CheckedArithmeticThrowsOnOverflow) {
  EXPECT_THROW(checked_add(kMax, 1), OverflowError);
  EXPECT_THROW(checked_sub(kMin, 1), OverflowError);
  EXPECT_THROW(checked_mul(kMax / 2 + 1, 2), OverflowError);
  EXPECT_THROW(checked_pow(2, 127), OverflowError);
  EXPECT_EQ(checked_pow(2, 126), static_cast<Int>(1) << 126);
  EXPECT_EQ(checked_pow(-3, 3), -27);
}

TEST(Int128, FitsInt64) {
  EXPECT_TRUE(fits_int64(INT64_MAX));
  EXPECT_TRUE(fits_int64(INT64_MIN));
  EXPECT_FALSE(fits_int64(static_cast<Int>(INT64_MAX) + 1));
}

TEST(Rational, NormalizesSignAndLowestTerms) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(Rational, FieldOperations) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_TRUE((a * Rational(3)).is_integer());
  EXPECT_THROW(a / Rational(0), DomainError);
}
