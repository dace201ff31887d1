// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>

#include "fishmap/classify.hpp"
#include "fishmap/geo.hpp"
#include "fishmap/types.hpp"

namespace fishmap {

/// Equal-area plane for the 1 km grid: spherical Lambert azimuthal
/// equal-area on the authalic sphere with the EU standard grid parameters
/// (EPSG:3035-compatible center and false origin).
struct GridSpec {
  double center_lat = 52.0;
  double center_lon = 10.0;
  double false_easting = 4'321'000.0;
  double false_northing = 3'210'000.0;
  double cell_size = 1000.0;  // meters
  double sphere_radius = kAuthalicRadiusM;

  bool operator==(const GridSpec&) const = default;
};

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Forward projection. Throws AntipodalPointError when the point is
/// (numerically) antipodal to the projection center.
PlanarPoint project(double lat, double lon, const GridSpec& spec);

/// Inverse projection; the false origin maps back to the center.
GeoPoint unproject(double x, double y, const GridSpec& spec);

/// Cell coordinates: floor(x / cell_size), floor(y / cell_size).
/// Cells are half-open [origin, origin + size) in both axes.
struct CellIndex {
  std::int64_t ix = 0;
  std::int64_t iy = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const noexcept {
    // splitmix-style mix of the packed pair
    std::uint64_t v = (static_cast<std::uint64_t>(c.ix) << 32) ^
                      (static_cast<std::uint64_t>(c.iy) & 0xffffffffull);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdull;
    v ^= v >> 33;
    return static_cast<std::size_t>(v);
  }
};

CellIndex cell_of(double x, double y, const GridSpec& spec);

using CellCounts = std::unordered_map<CellIndex, std::uint64_t, CellIndexHash>;

/// Sparse per-cell fishing point counts. Each count converts to minutes of
/// activity via the decimation quantum.
struct DensityRaster {
  GridSpec spec;
  CellCounts cells;             // only cells with count >= 1
  double quantum_minutes = 5.0;
  std::uint64_t total = 0;      // sum of all counts
  std::uint64_t skipped = 0;    // unprojectable points dropped in lenient mode

  double minutes(const CellIndex& c) const;
};

/// Count points per cell. In lenient mode unprojectable points are counted
/// in `skipped`; in strict mode they propagate AntipodalPointError.
DensityRaster aggregate(std::span<const FishingPoint> points, const GridSpec& spec,
                        double quantum_minutes, Strictness strictness = Strictness::lenient);

/// Cellwise addition of a shard into an accumulator (partition-and-merge).
void merge_into(DensityRaster& target, const DensityRaster& shard);

}  // namespace fishmap
