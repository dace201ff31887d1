// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "fishmap/ais.hpp"

namespace fishmap {

/// Time-ordered, deduplicated message sequence for one vessel.
struct VesselTrack {
  Mmsi mmsi = 0;
  std::vector<AisMessage> points;  // strictly increasing timestamps
};

/// Fixed time lattice. Windows are [anchor + n*window, anchor + (n+1)*window).
/// The anchor stays at the Unix epoch so runs over different date ranges
/// remain co-registered in time.
struct DecimationConfig {
  std::int64_t window_s = 300;
  std::int64_t anchor_s = 0;

  std::int64_t window_index(std::int64_t t) const;
  double quantum_minutes() const { return static_cast<double>(window_s) / 60.0; }
};

/// Group messages into per-vessel tracks, sorted by timestamp with exact
/// (mmsi, timestamp) duplicates collapsed. Ties on timestamp are broken by
/// a total order on the remaining fields so the result does not depend on
/// input order. Tracks are returned in ascending mmsi order.
std::vector<VesselTrack> build_tracks(std::vector<AisMessage> messages);

/// Keep the earliest point in each lattice window.
VesselTrack decimate(const VesselTrack& track, const DecimationConfig& config);

/// The track's sog values in point order. No speed filtering happens here;
/// the fit-time threshold is applied by the mixture module.
std::vector<double> speed_profile(const VesselTrack& track);

}  // namespace fishmap
