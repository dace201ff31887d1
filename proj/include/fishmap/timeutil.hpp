// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fishmap {

/// Parse a strict ISO-8601 UTC instant of the form YYYY-MM-DDTHH:MM:SSZ.
/// Returns Unix seconds, or nullopt if the string deviates in any way
/// (timezone offsets, fractional seconds and lowercase markers are rejected).
std::optional<std::int64_t> parse_iso8601_utc(std::string_view s);

/// Format Unix seconds as YYYY-MM-DDTHH:MM:SSZ.
std::string format_iso8601_utc(std::int64_t unix_seconds);

/// Floor division, rounding toward negative infinity.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace fishmap
