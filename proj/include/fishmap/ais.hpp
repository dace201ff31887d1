// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fishmap/types.hpp"

namespace fishmap {

/// One timestamped AIS position report.
struct AisMessage {
  Mmsi mmsi = 0;
  std::int64_t timestamp = 0;  // Unix seconds, UTC
  double lat = 0.0;            // degrees WGS84, [-90, 90]
  double lon = 0.0;            // degrees WGS84, [-180, 180]
  double sog = 0.0;            // speed over ground, knots, >= 0
  std::optional<double> cog;   // course over ground, degrees, [0, 360)
};

/// One row of the fishing fleet register.
struct FleetRegisterRecord {
  std::string cfr;        // register key
  std::string call_sign;  // empty when absent
  std::optional<Mmsi> mmsi;
  double loa = 0.0;       // length overall, meters
  std::string gear_main;  // ISSCFG-style gear code
  std::string flag;       // 2-letter country code
};

/// Row accounting for one bulk parse.
struct IngestReport {
  std::uint64_t rows_read = 0;
  std::uint64_t rows_accepted = 0;
  std::uint64_t rows_rejected = 0;
  std::map<std::string, std::uint64_t> rejection_histogram;
};

}  // namespace fishmap
