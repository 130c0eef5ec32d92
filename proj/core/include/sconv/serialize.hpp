#pragma once

namespace sconv {

/// Version stamped into every JSON artifact.
inline constexpr int kSchemaVersion = 1;

}  // namespace sconv
