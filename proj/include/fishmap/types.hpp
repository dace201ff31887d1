// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace fishmap {

/// 9-digit Maritime Mobile Service Identity. Values fit in 32 bits.
using Mmsi = std::uint32_t;

/// Row-level error handling for bulk parsers.
/// Lenient counts and skips bad rows; strict aborts on the first one.
enum class Strictness { lenient, strict };

}  // namespace fishmap
