#pragma once

#include <json.hpp>

#include "sconv/int128.hpp"

namespace sconv {

/// JSON number when the value fits in int64, decimal string otherwise.
inline nlohmann::ordered_json int_to_json(Int v) {
  if (fits_int64(v)) return static_cast<std::int64_t>(v);
  return to_string(v);
}

}  // namespace sconv
