#include "sconv/rational.hpp"

namespace sconv {

namespace {

Int gcd128(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(Int num, Int den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = checked_sub(0, num);
    den = checked_sub(0, den);
  }
  const Int g = gcd128(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return {checked_add(a.num_, b.num_), a.den_};
  const Int g = gcd128(a.den_, b.den_);
  const Int da = a.den_ / g;
  return {checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, da)), checked_mul(da, b.den_)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const Int g1 = gcd128(a.num_, b.den_);
  const Int g2 = gcd128(b.num_, a.den_);
  const Int n1 = g1 > 1 ? a.num_ / g1 : a.num_;
  const Int d2 = g1 > 1 ? b.den_ / g1 : b.den_;
  const Int n2 = g2 > 1 ? b.num_ / g2 : b.num_;
  const Int d1 = g2 > 1 ? a.den_ / g2 : a.den_;
  return {checked_mul(n1, n2), checked_mul(d1, d2)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero rational");
  return a * Rational(b.den_, b.num_);
}

std::string to_string(const Rational& r) {
  return r.is_integer() ? to_string(r.num()) : to_string(r.num()) + "/" + to_string(r.den());
}

}  // namespace sconv
