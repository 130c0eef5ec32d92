#include "sconv/int128.hpp"

#include <algorithm>

namespace sconv {

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the unsigned magnitude so INT128_MIN is handled.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1U
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10U)));
    mag /= 10U;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ParseError("integer literal has no digits: '" + std::string(text) + "'");
  Int value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw ParseError("invalid digit in integer literal: '" + std::string(text) + "'");
    value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

}  // namespace sconv
