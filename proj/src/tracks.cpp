// SPDX-License-Identifier: Apache-2.0
#include "fishmap/tracks.hpp"

#include <algorithm>
#include <tuple>

#include "fishmap/timeutil.hpp"

namespace fishmap {

namespace {

// Total order over every payload field so rebuilding from a permuted input
// yields byte-identical tracks. Optional cog sorts empty-first.
bool message_less(const AisMessage& a, const AisMessage& b) {
  const double acog = a.cog.value_or(-1.0);
  const double bcog = b.cog.value_or(-1.0);
  return std::tie(a.timestamp, a.lat, a.lon, a.sog, acog) <
         std::tie(b.timestamp, b.lat, b.lon, b.sog, bcog);
}

}  // namespace

std::int64_t DecimationConfig::window_index(std::int64_t timestamp) const {
  // floor division keeps pre-anchor timestamps on the same lattice
  return floor_div(timestamp - anchor_s, window_s);
}

std::vector<VesselTrack> build_tracks(std::vector<AisMessage> messages) {
  std::stable_sort(messages.begin(), messages.end(),
                   [](const AisMessage& a, const AisMessage& b) {
                     if (a.mmsi != b.mmsi) return a.mmsi < b.mmsi;
                     return message_less(a, b);
                   });

  std::vector<VesselTrack> tracks;
  for (std::size_t i = 0; i < messages.size();) {
    VesselTrack track;
    track.mmsi = messages[i].mmsi;
    std::int64_t last_ts = -1;
    bool have_last = false;
    for (; i < messages.size() && messages[i].mmsi == track.mmsi; ++i) {
      // one position report per vessel per second: keep the ordered-first
      if (have_last && messages[i].timestamp == last_ts) continue;
      last_ts = messages[i].timestamp;
      have_last = true;
      track.points.push_back(messages[i]);
    }
    tracks.push_back(std::move(track));
  }
  return tracks;
}

VesselTrack decimate(const VesselTrack& track, const DecimationConfig& config) {
  VesselTrack out;
  out.mmsi = track.mmsi;
  bool have_window = false;
  std::int64_t current_window = 0;
  for (const auto& point : track.points) {
    const std::int64_t w = config.window_index(point.timestamp);
    if (have_window && w == current_window) continue;
    current_window = w;
    have_window = true;
    out.points.push_back(point);
  }
  return out;
}

std::vector<double> speed_profile(const VesselTrack& track) {
  std::vector<double> speeds;
  speeds.reserve(track.points.size());
  for (const auto& point : track.points) speeds.push_back(point.sog);
  return speeds;
}

}  // namespace fishmap
