// SPDX-License-Identifier: Apache-2.0
#include "fishmap/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "fishmap/errors.hpp"
#include "fishmap/timeutil.hpp"

namespace fishmap {

std::vector<CruiseSegment> extract_cruise_segments(const VesselTrack& track,
                                                   const CoverageConfig& config) {
  std::vector<CruiseSegment> segments;
  CruiseSegment current;
  current.mmsi = track.mmsi;

  auto flush = [&] {
    if (!current.points.empty()) {
      current.span_s = current.points.back().timestamp - current.points.front().timestamp;
      segments.push_back(std::move(current));
      current = CruiseSegment{};
      current.mmsi = track.mmsi;
    }
  };

  for (const auto& p : track.points) {
    if (p.sog < config.cruise_min) {
      flush();
      continue;
    }
    if (!current.points.empty() &&
        p.timestamp - current.points.back().timestamp > config.max_gap_s) {
      flush();
    }
    current.points.push_back(p);
  }
  flush();
  return segments;
}

std::vector<ExpectedPosition> interpolate_expected(const CruiseSegment& segment,
                                                   const DecimationConfig& lattice) {
  std::vector<ExpectedPosition> expected;
  if (segment.points.empty()) return expected;
  if (segment.points.size() == 1) {
    const auto& p = segment.points.front();
    expected.push_back({p.timestamp, {p.lat, p.lon}});
    return expected;
  }

  const std::int64_t t0 = segment.points.front().timestamp;
  const std::int64_t tn = segment.points.back().timestamp;
  // first lattice tick at or after t0: anchor + ceil((t0-anchor)/w)*w
  const std::int64_t w = lattice.window_s;
  std::int64_t tick = lattice.anchor_s + floor_div(t0 - lattice.anchor_s + w - 1, w) * w;

  std::size_t hi = 1;  // points[hi-1].timestamp <= tick <= points[hi].timestamp
  for (; tick <= tn; tick += w) {
    while (segment.points[hi].timestamp < tick) ++hi;
    const auto& b = segment.points[hi];
    const auto& a = segment.points[hi - 1];
    if (tick == a.timestamp) {
      expected.push_back({tick, {a.lat, a.lon}});
      continue;
    }
    if (tick == b.timestamp) {
      expected.push_back({tick, {b.lat, b.lon}});
      continue;
    }
    const double frac = static_cast<double>(tick - a.timestamp) /
                        static_cast<double>(b.timestamp - a.timestamp);
    expected.push_back({tick, slerp_position({a.lat, a.lon}, {b.lat, b.lon}, frac)});
  }
  return expected;
}

std::optional<double> CoverageRaster::ratio(const CellIndex& c) const {
  const auto it = expected.find(c);
  if (it == expected.end() || it->second == 0) return std::nullopt;
  const auto rit = received.find(c);
  const double r = rit == received.end() ? 0.0 : static_cast<double>(rit->second);
  return std::min(1.0, r / static_cast<double>(it->second));
}

CoverageRaster coverage_map(const std::vector<VesselTrack>& tracks,
                            const CoverageConfig& config, const GridSpec& spec) {
  CoverageRaster raster;
  raster.spec = spec;
  auto bump = [&](CellCounts& counts, double lat, double lon) {
    // coverage is a diagnostic layer; points the plane cannot hold are dropped
    try {
      const PlanarPoint xy = project(lat, lon, spec);
      ++counts[cell_of(xy.x, xy.y, spec)];
    } catch (const AntipodalPointError&) {
    }
  };

  for (const auto& track : tracks) {
    for (const auto& segment : extract_cruise_segments(track, config)) {
      for (const auto& p : segment.points) bump(raster.received, p.lat, p.lon);
      for (const auto& e : interpolate_expected(segment, config.lattice)) {
        bump(raster.expected, e.pos.lat, e.pos.lon);
      }
    }
  }
  return raster;
}

std::vector<ReliabilityRow> reliability_join(const DensityRaster& density,
                                             const CoverageRaster& coverage) {
  if (!(density.spec == coverage.spec)) {
    throw GridSpecMismatchError("density and coverage rasters use different grids");
  }
  std::vector<ReliabilityRow> rows;
  rows.reserve(density.cells.size());
  for (const auto& [cell, count] : density.cells) {
    ReliabilityRow row;
    row.cell = cell;
    row.count = count;
    row.minutes = density.minutes(cell);
    row.ratio = coverage.ratio(cell);
    row.low_coverage = row.ratio && *row.ratio < 0.5;
    row.no_coverage_info = !row.ratio.has_value();
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const ReliabilityRow& a, const ReliabilityRow& b) { return a.cell < b.cell; });
  return rows;
}

}  // namespace fishmap
