// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fishmap/ais.hpp"
#include "fishmap/types.hpp"

namespace fishmap {

struct ParsedAis {
  std::vector<AisMessage> messages;
  IngestReport report;
};

/// Parse positional AIS CSV (header: mmsi,timestamp,lat,lon,sog,cog).
/// Leading '#' comment lines are skipped. In lenient mode invalid rows are
/// counted in the report and dropped; in strict mode the first invalid row
/// raises InputError with its line number. A missing or misnamed header
/// raises InputError in both modes.
ParsedAis parse_ais_csv(std::istream& in, Strictness strictness = Strictness::lenient);

/// Parse the fleet register CSV (header: cfr,call_sign,mmsi,loa,gear_main,flag).
/// Always strict: duplicate cfr keys and invariant violations raise InputError.
std::vector<FleetRegisterRecord> load_fleet_register(std::istream& in);

/// mmsi -> call_sign side table (header: mmsi,call_sign).
using StaticPairs = std::map<Mmsi, std::string>;

/// Parse the static-pairs CSV. Duplicate mmsi keys raise InputError.
StaticPairs load_static_pairs(std::istream& in);

struct LinkResult {
  std::set<Mmsi> vessel_ids;          // the MMSI_list consumed downstream
  std::vector<AisMessage> messages;   // only messages from matched vessels
  std::uint64_t messages_dropped = 0;
  std::uint64_t matched_direct = 0;   // vessels joined on register mmsi
  std::uint64_t matched_call_sign = 0;
};

/// Restrict the message stream to vessels found in the fleet register,
/// joining on the register mmsi directly or on call sign via static_pairs.
/// No matches is not an error; the result is simply empty.
LinkResult link_vessels(const std::vector<AisMessage>& messages,
                        const std::vector<FleetRegisterRecord>& reg,
                        const StaticPairs& static_pairs = {});

}  // namespace fishmap
