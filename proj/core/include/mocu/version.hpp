#pragma once

#include <cstdint>

namespace mocu {

inline constexpr const char* kVersion = "0.1.0";

/// Default master seed used by the CLI when none is given; fixed so default
/// invocations reproduce each other.
inline constexpr std::uint64_t kDefaultSeed = 20240101;

}  // namespace mocu
