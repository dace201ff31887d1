// SPDX-License-Identifier: Apache-2.0
#include "fishmap/classify.hpp"

#include <algorithm>

namespace fishmap {

SpeedBand fishing_band(const MixtureFit& fit, double k) {
  SpeedBand band;
  band.k = k;
  band.v_lo = std::max(0.0, fit.mu1 - k * fit.sigma1);
  band.v_hi = fit.mu1 + k * fit.sigma1;
  return band;
}

std::vector<FishingPoint> classify_track(const VesselTrack& track, const SpeedBand& band) {
  std::vector<FishingPoint> points;
  for (const auto& p : track.points) {
    if (p.sog > band.v_lo && p.sog < band.v_hi) {
      points.push_back({track.mmsi, p.timestamp, p.lat, p.lon, p.sog});
    }
  }
  return points;
}

FishingIdentification identify_fishing(const std::vector<VesselTrack>& tracks,
                                       const std::map<Mmsi, VesselFitOutcome>& fits, double k,
                                       AmbiguousPolicy policy,
                                       std::optional<double> band_min_speed) {
  FishingIdentification out;
  for (const auto& track : tracks) {
    VesselSummary summary;
    summary.mmsi = track.mmsi;
    summary.n_points = track.points.size();

    const auto it = fits.find(track.mmsi);
    if (it == fits.end() || !it->second.fit) {
      summary.skip = it == fits.end() ? FitSkip::too_few_samples : it->second.skip;
      ++out.vessels_skipped;
      out.summaries.push_back(summary);
      continue;
    }

    const MixtureFit& fit = *it->second.fit;
    summary.ambiguous = separation_diagnostics(fit).ambiguous;
    summary.band = fishing_band(fit, k);
    if (summary.ambiguous && policy == AmbiguousPolicy::exclude) {
      ++out.vessels_excluded_ambiguous;
      out.summaries.push_back(summary);
      continue;
    }

    std::vector<FishingPoint> pts = classify_track(track, *summary.band);
    if (band_min_speed) {
      std::erase_if(pts, [&](const FishingPoint& p) { return p.sog <= *band_min_speed; });
    }
    summary.n_fishing = pts.size();
    ++out.vessels_classified;
    out.points.insert(out.points.end(), pts.begin(), pts.end());
    out.summaries.push_back(summary);
  }
  // tracks arrive mmsi-sorted with ascending timestamps, so the
  // concatenation is already in (mmsi, timestamp) order; keep the sort as a
  // guard for callers handing in unordered tracks.
  std::sort(out.points.begin(), out.points.end(), [](const FishingPoint& a, const FishingPoint& b) {
    if (a.mmsi != b.mmsi) return a.mmsi < b.mmsi;
    return a.timestamp < b.timestamp;
  });
  return out;
}

}  // namespace fishmap
