// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fishmap/coverage.hpp"
#include "fishmap/grid.hpp"

namespace fishmap {

/// Dense bounding window of a sparse cell map.
struct CellWindow {
  std::int64_t ix_min = 0, ix_max = -1;
  std::int64_t iy_min = 0, iy_max = -1;
  bool empty() const { return ix_max < ix_min; }
  std::int64_t ncols() const { return empty() ? 0 : ix_max - ix_min + 1; }
  std::int64_t nrows() const { return empty() ? 0 : iy_max - iy_min + 1; }
};

CellWindow window_of(const CellCounts& cells);

/// ESRI ASCII grid of integer counts over the raster's bounding window,
/// rows north to south, LF line endings. Untouched cells inside the window
/// are written as 0 (a zero count is known, not missing). An empty raster
/// writes a 0x0 header and no body.
void write_esri_ascii(std::ostream& out, const DensityRaster& raster);

/// ESRI ASCII grid of reception ratios, fixed 4 decimals, NODATA -9999
/// where no expectation exists.
void write_esri_ascii(std::ostream& out, const CoverageRaster& raster);

/// Sparse CSV `ix,iy,x_center,y_center,count,minutes`, ordered by (ix, iy).
/// header_lines are emitted first, each prefixed with '#'.
void write_density_cells_csv(std::ostream& out, const DensityRaster& raster,
                             const std::vector<std::string>& header_lines = {});

/// Sparse CSV `ix,iy,x_center,y_center,received,expected,ratio`.
void write_coverage_cells_csv(std::ostream& out, const CoverageRaster& raster,
                              const std::vector<std::string>& header_lines = {});

/// GeoJSON FeatureCollection of cell polygons (corners inverse-projected to
/// lon/lat) for GIS overlay.
void write_density_geojson(std::ostream& out, const DensityRaster& raster);
void write_coverage_geojson(std::ostream& out, const CoverageRaster& raster);

}  // namespace fishmap
