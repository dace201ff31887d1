// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fishmap/geo.hpp"
#include "fishmap/grid.hpp"
#include "fishmap/tracks.hpp"

namespace fishmap {

struct CoverageConfig {
  double cruise_min = 8.0;          // knots; points at or above are "cruising"
  std::int64_t max_gap_s = 21600;   // segments split across longer gaps
  DecimationConfig lattice;         // shared with the density run
};

/// Maximal run of consecutive cruising points of one vessel.
struct CruiseSegment {
  Mmsi mmsi = 0;
  std::vector<AisMessage> points;  // time-ascending, all sog >= cruise_min
  std::int64_t span_s = 0;
};

/// pre: track decimated on the shared lattice.
std::vector<CruiseSegment> extract_cruise_segments(const VesselTrack& track,
                                                   const CoverageConfig& config);

struct ExpectedPosition {
  std::int64_t timestamp = 0;
  GeoPoint pos;
};

/// Positions the segment should have produced: one for every lattice
/// timestamp between its first and last point, great-circle interpolated
/// between the bracketing received points. A timestamp already on the
/// lattice maps to the received point itself. Single-point segments yield
/// just that point.
std::vector<ExpectedPosition> interpolate_expected(const CruiseSegment& segment,
                                                   const DecimationConfig& lattice);

/// Received and expected lattice counts per cell; reception ratio where
/// expected > 0. Interpolated positions can land one cell away from the
/// received ones on curved paths, so received may locally exceed expected;
/// the ratio is clipped to 1 and the raw counts kept.
struct CoverageRaster {
  GridSpec spec;
  CellCounts received;
  CellCounts expected;

  std::optional<double> ratio(const CellIndex& c) const;
};

/// Build the reception-reliability raster from (decimated) tracks of any
/// vessels; only their cruising segments contribute.
CoverageRaster coverage_map(const std::vector<VesselTrack>& tracks,
                            const CoverageConfig& config, const GridSpec& spec);

struct ReliabilityRow {
  CellIndex cell;
  std::uint64_t count = 0;
  double minutes = 0.0;
  std::optional<double> ratio;
  bool low_coverage = false;     // ratio < 0.5
  bool no_coverage_info = false; // cell absent from the expected map
};

/// Per-cell join of fishing intensity with reception reliability, one row
/// per density cell, ordered by (ix, iy). Throws GridSpecMismatchError.
std::vector<ReliabilityRow> reliability_join(const DensityRaster& density,
                                             const CoverageRaster& coverage);

}  // namespace fishmap
