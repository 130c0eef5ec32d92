#pragma once

#include <string>

#include "sconv/int128.hpp"

namespace sconv {

/// Exact fraction over 128-bit integers, kept in lowest terms with a
/// positive denominator. Every operation is overflow-checked.
class Rational {
 public:
  Rational() = default;
  Rational(Int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Int num, Int den);

  [[nodiscard]] Int num() const { return num_; }
  [[nodiscard]] Int den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return {checked_sub(0, num_), den_}; }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::string to_string(const Rational& r);

}  // namespace sconv
