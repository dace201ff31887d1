// SPDX-License-Identifier: Apache-2.0
#include "fishmap/raster_io.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "json.hpp"

namespace fishmap {

namespace {

constexpr const char* kNoData = "-9999";

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::vector<CellIndex> sorted_cells(const CellCounts& cells) {
  std::vector<CellIndex> keys;
  keys.reserve(cells.size());
  for (const auto& [cell, count] : cells) keys.push_back(cell);
  std::sort(keys.begin(), keys.end());
  return keys;
}

void write_esri_header(std::ostream& out, const CellWindow& w, const GridSpec& spec) {
  out << "ncols " << w.ncols() << '\n';
  out << "nrows " << w.nrows() << '\n';
  out << "xllcorner " << fmt("%.6f", static_cast<double>(w.ix_min) * spec.cell_size) << '\n';
  out << "yllcorner " << fmt("%.6f", static_cast<double>(w.iy_min) * spec.cell_size) << '\n';
  out << "cellsize " << fmt("%.6f", spec.cell_size) << '\n';
  out << "NODATA_value " << kNoData << '\n';
}

void write_header_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << "# " << line << '\n';
}

std::uint64_t count_at(const CellCounts& cells, const CellIndex& c) {
  const auto it = cells.find(c);
  return it == cells.end() ? 0 : it->second;
}

nlohmann::ordered_json cell_polygon(const CellIndex& c, const GridSpec& spec) {
  const double x0 = static_cast<double>(c.ix) * spec.cell_size;
  const double y0 = static_cast<double>(c.iy) * spec.cell_size;
  const double x1 = x0 + spec.cell_size;
  const double y1 = y0 + spec.cell_size;
  nlohmann::ordered_json ring = nlohmann::ordered_json::array();
  for (const auto& [x, y] :
       {std::pair{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}) {
    const GeoPoint g = unproject(x, y, spec);
    ring.push_back({g.lon, g.lat});
  }
  nlohmann::ordered_json geom;
  geom["type"] = "Polygon";
  geom["coordinates"] = nlohmann::ordered_json::array({ring});
  return geom;
}

void write_feature_collection(std::ostream& out, nlohmann::ordered_json features) {
  nlohmann::ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = std::move(features);
  out << fc.dump() << '\n';
}

}  // namespace

CellWindow window_of(const CellCounts& cells) {
  CellWindow w;
  bool first = true;
  for (const auto& [cell, count] : cells) {
    if (first) {
      w.ix_min = w.ix_max = cell.ix;
      w.iy_min = w.iy_max = cell.iy;
      first = false;
      continue;
    }
    w.ix_min = std::min(w.ix_min, cell.ix);
    w.ix_max = std::max(w.ix_max, cell.ix);
    w.iy_min = std::min(w.iy_min, cell.iy);
    w.iy_max = std::max(w.iy_max, cell.iy);
  }
  return w;
}

void write_esri_ascii(std::ostream& out, const DensityRaster& raster) {
  const CellWindow w = window_of(raster.cells);
  write_esri_header(out, w, raster.spec);
  if (w.empty()) return;
  for (std::int64_t iy = w.iy_max; iy >= w.iy_min; --iy) {
    for (std::int64_t ix = w.ix_min; ix <= w.ix_max; ++ix) {
      if (ix > w.ix_min) out << ' ';
      out << count_at(raster.cells, {ix, iy});
    }
    out << '\n';
  }
}

void write_esri_ascii(std::ostream& out, const CoverageRaster& raster) {
  CellCounts all = raster.expected;
  for (const auto& [cell, count] : raster.received) all[cell] += 0;
  const CellWindow w = window_of(all);
  write_esri_header(out, w, raster.spec);
  if (w.empty()) return;
  for (std::int64_t iy = w.iy_max; iy >= w.iy_min; --iy) {
    for (std::int64_t ix = w.ix_min; ix <= w.ix_max; ++ix) {
      if (ix > w.ix_min) out << ' ';
      const auto r = raster.ratio({ix, iy});
      out << (r ? fmt("%.4f", *r) : kNoData);
    }
    out << '\n';
  }
}

void write_density_cells_csv(std::ostream& out, const DensityRaster& raster,
                             const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "ix,iy,x_center,y_center,count,minutes\n";
  for (const CellIndex& c : sorted_cells(raster.cells)) {
    const double x = (static_cast<double>(c.ix) + 0.5) * raster.spec.cell_size;
    const double y = (static_cast<double>(c.iy) + 0.5) * raster.spec.cell_size;
    out << c.ix << ',' << c.iy << ',' << fmt("%.1f", x) << ',' << fmt("%.1f", y) << ','
        << raster.cells.at(c) << ',' << fmt("%.4f", raster.minutes(c)) << '\n';
  }
}

void write_coverage_cells_csv(std::ostream& out, const CoverageRaster& raster,
                              const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "ix,iy,x_center,y_center,received,expected,ratio\n";
  CellCounts all = raster.expected;
  for (const auto& [cell, count] : raster.received) all[cell] += 0;
  for (const CellIndex& c : sorted_cells(all)) {
    const double x = (static_cast<double>(c.ix) + 0.5) * raster.spec.cell_size;
    const double y = (static_cast<double>(c.iy) + 0.5) * raster.spec.cell_size;
    const auto r = raster.ratio(c);
    out << c.ix << ',' << c.iy << ',' << fmt("%.1f", x) << ',' << fmt("%.1f", y) << ','
        << count_at(raster.received, c) << ',' << count_at(raster.expected, c) << ','
        << (r ? fmt("%.4f", *r) : "") << '\n';
  }
}

void write_density_geojson(std::ostream& out, const DensityRaster& raster) {
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const CellIndex& c : sorted_cells(raster.cells)) {
    nlohmann::ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = cell_polygon(c, raster.spec);
    f["properties"] = {{"ix", c.ix},
                       {"iy", c.iy},
                       {"count", raster.cells.at(c)},
                       {"minutes", raster.minutes(c)}};
    features.push_back(std::move(f));
  }
  write_feature_collection(out, std::move(features));
}

void write_coverage_geojson(std::ostream& out, const CoverageRaster& raster) {
  CellCounts all = raster.expected;
  for (const auto& [cell, count] : raster.received) all[cell] += 0;
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const CellIndex& c : sorted_cells(all)) {
    nlohmann::ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = cell_polygon(c, raster.spec);
    nlohmann::ordered_json props = {{"ix", c.ix},
                                    {"iy", c.iy},
                                    {"received", count_at(raster.received, c)},
                                    {"expected", count_at(raster.expected, c)}};
    const auto r = raster.ratio(c);
    props["ratio"] = r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr);
    f["properties"] = std::move(props);
    features.push_back(std::move(f));
  }
  write_feature_collection(out, std::move(features));
}

}  // namespace fishmap
