// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fishmap/mixture.hpp"
#include "fishmap/tracks.hpp"

namespace fishmap {

/// Per-vessel fishing speed interval: first mode +- k standard deviations,
/// lower edge clamped at 0.
struct SpeedBand {
  double v_lo = 0.0;
  double v_hi = 0.0;
  double k = 0.0;
};

SpeedBand fishing_band(const MixtureFit& fit, double k);

/// A track point classified as fishing.
struct FishingPoint {
  Mmsi mmsi = 0;
  std::int64_t timestamp = 0;
  double lat = 0.0;
  double lon = 0.0;
  double sog = 0.0;
};

/// Points with v_lo < sog < v_hi (strict on both sides). The band applies to
/// every track point, including those at or below the fit-time speed floor.
std::vector<FishingPoint> classify_track(const VesselTrack& track, const SpeedBand& band);

/// Whether vessels with an ambiguous mixture fit contribute points.
enum class AmbiguousPolicy { include, exclude };

struct VesselSummary {
  Mmsi mmsi = 0;
  std::size_t n_points = 0;
  std::size_t n_fishing = 0;
  FitSkip skip = FitSkip::none;
  bool ambiguous = false;
  std::optional<SpeedBand> band;
};

struct FishingIdentification {
  std::vector<FishingPoint> points;  // sorted by (mmsi, timestamp)
  std::vector<VesselSummary> summaries;
  std::size_t vessels_classified = 0;
  std::size_t vessels_skipped = 0;
  std::size_t vessels_excluded_ambiguous = 0;
};

/// Run the per-vessel band classification across a fleet. Vessels whose fit
/// was skipped contribute nothing; ambiguous fits are included (tagged) or
/// excluded per policy. When band_min_speed is set, only points strictly
/// above it are eligible, mirroring the fit-time filter.
FishingIdentification identify_fishing(const std::vector<VesselTrack>& tracks,
                                       const std::map<Mmsi, VesselFitOutcome>& fits,
                                       double k,
                                       AmbiguousPolicy policy = AmbiguousPolicy::include,
                                       std::optional<double> band_min_speed = std::nullopt);

}  // namespace fishmap
