#pragma once

namespace stg {
// Bumped whenever cached results could change.
inline constexpr const char* kVersion = "1.0.0";
}  // namespace stg
