// SPDX-License-Identifier: Apache-2.0
#include "fishmap/grid.hpp"

#include <cmath>
#include <string>

#include "fishmap/errors.hpp"

namespace fishmap {

namespace {

// Below this the forward-map denominator means the point is numerically
// antipodal to the projection center and the map blows up.
constexpr double kAntipodalDenominator = 1e-12;

}  // namespace

PlanarPoint project(double lat, double lon, const GridSpec& spec) {
  const double phi = deg2rad(lat);
  const double lam = deg2rad(lon);
  const double phi1 = deg2rad(spec.center_lat);
  const double dlam = lam - deg2rad(spec.center_lon);

  const double sin_phi = std::sin(phi);
  const double cos_phi = std::cos(phi);
  const double sin_phi1 = std::sin(phi1);
  const double cos_phi1 = std::cos(phi1);
  const double cos_dlam = std::cos(dlam);

  const double denom = 1.0 + sin_phi1 * sin_phi + cos_phi1 * cos_phi * cos_dlam;
  if (denom <= kAntipodalDenominator) {
    throw AntipodalPointError("point (" + std::to_string(lat) + ", " + std::to_string(lon) +
                              ") is antipodal to the projection center");
  }
  const double kp = std::sqrt(2.0 / denom);
  PlanarPoint p;
  p.x = spec.false_easting + spec.sphere_radius * kp * cos_phi * std::sin(dlam);
  p.y = spec.false_northing +
        spec.sphere_radius * kp * (cos_phi1 * sin_phi - sin_phi1 * cos_phi * cos_dlam);
  return p;
}

GeoPoint unproject(double x, double y, const GridSpec& spec) {
  const double dx = x - spec.false_easting;
  const double dy = y - spec.false_northing;
  const double rho = std::hypot(dx, dy);
  if (rho < 1e-12) return {spec.center_lat, spec.center_lon};

  const double half = std::min(1.0, rho / (2.0 * spec.sphere_radius));
  const double c = 2.0 * std::asin(half);
  const double sin_c = std::sin(c);
  const double cos_c = std::cos(c);
  const double phi1 = deg2rad(spec.center_lat);
  const double sin_phi1 = std::sin(phi1);
  const double cos_phi1 = std::cos(phi1);

  const double sin_phi = cos_c * sin_phi1 + dy * sin_c * cos_phi1 / rho;
  const double phi = std::asin(std::min(1.0, std::max(-1.0, sin_phi)));
  const double lam = deg2rad(spec.center_lon) +
                     std::atan2(dx * sin_c, rho * cos_phi1 * cos_c - dy * sin_phi1 * sin_c);

  GeoPoint g;
  g.lat = rad2deg(phi);
  g.lon = rad2deg(lam);
  if (g.lon >= 180.0) g.lon -= 360.0;
  if (g.lon < -180.0) g.lon += 360.0;
  return g;
}

CellIndex cell_of(double x, double y, const GridSpec& spec) {
  return {static_cast<std::int64_t>(std::floor(x / spec.cell_size)),
          static_cast<std::int64_t>(std::floor(y / spec.cell_size))};
}

double DensityRaster::minutes(const CellIndex& c) const {
  const auto it = cells.find(c);
  return it == cells.end() ? 0.0 : static_cast<double>(it->second) * quantum_minutes;
}

DensityRaster aggregate(std::span<const FishingPoint> points, const GridSpec& spec,
                        double quantum_minutes, Strictness strictness) {
  DensityRaster raster;
  raster.spec = spec;
  raster.quantum_minutes = quantum_minutes;
  for (const auto& p : points) {
    PlanarPoint xy;
    try {
      xy = project(p.lat, p.lon, spec);
    } catch (const AntipodalPointError&) {
      if (strictness == Strictness::strict) throw;
      ++raster.skipped;
      continue;
    }
    ++raster.cells[cell_of(xy.x, xy.y, spec)];
    ++raster.total;
  }
  return raster;
}

void merge_into(DensityRaster& target, const DensityRaster& shard) {
  if (!(target.spec == shard.spec) || target.quantum_minutes != shard.quantum_minutes) {
    throw GridSpecMismatchError("cannot merge rasters with different grid parameters");
  }
  for (const auto& [cell, count] : shard.cells) target.cells[cell] += count;
  target.total += shard.total;
  target.skipped += shard.skipped;
}

}  // namespace fishmap
