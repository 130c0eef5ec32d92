#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sconv/error.hpp"

namespace sconv {

/// Signed value type for every arithmetical-function value and accumulator.
using Int = __int128;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

/// base^exp with overflow checking.
inline Int checked_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp > 0) {
    if (exp & 1U) r = checked_mul(r, base);
    exp >>= 1U;
    if (exp > 0) base = checked_mul(base, base);
  }
  return r;
}

std::string to_string(Int v);

/// Parses an optionally signed decimal literal; throws ParseError or OverflowError.
Int parse_int(std::string_view text);

/// True iff v is representable as int64_t.
inline bool fits_int64(Int v) {
  return v >= static_cast<Int>(INT64_MIN) && v <= static_cast<Int>(INT64_MAX);
}

}  // namespace sconv
