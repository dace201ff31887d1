// SPDX-License-Identifier: Apache-2.0
#include "fishmap/geo.hpp"

#include <cmath>

namespace fishmap {

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 to_unit(const GeoPoint& p) {
  const double la = deg2rad(p.lat);
  const double lo = deg2rad(p.lon);
  return {std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
}

GeoPoint to_geo(const Vec3& v) {
  const double lat = std::atan2(v.z, std::hypot(v.x, v.y));
  const double lon = std::atan2(v.y, v.x);
  return {rad2deg(lat), rad2deg(lon)};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace

double central_angle(const GeoPoint& a, const GeoPoint& b) {
  const Vec3 ua = to_unit(a), ub = to_unit(b);
  // atan2 form is well conditioned for both small and near-pi angles
  return std::atan2(norm(cross(ua, ub)), dot(ua, ub));
}

GeoPoint slerp_position(const GeoPoint& a, const GeoPoint& b, double fraction) {
  const Vec3 ua = to_unit(a), ub = to_unit(b);
  const double omega = std::atan2(norm(cross(ua, ub)), dot(ua, ub));
  const double so = std::sin(omega);
  if (so < 1e-12) {
    // coincident (or antipodal, where the arc is undefined anyway):
    // normalized linear blend
    Vec3 m{ua.x + fraction * (ub.x - ua.x), ua.y + fraction * (ub.y - ua.y),
           ua.z + fraction * (ub.z - ua.z)};
    const double n = norm(m);
    return to_geo({m.x / n, m.y / n, m.z / n});
  }
  const double ca = std::sin((1.0 - fraction) * omega) / so;
  const double cb = std::sin(fraction * omega) / so;
  return to_geo({ca * ua.x + cb * ub.x, ca * ua.y + cb * ub.y, ca * ua.z + cb * ub.z});
}

GeoPoint destination_point(const GeoPoint& start, double bearing_deg, double distance_m,
                           double radius_m) {
  const double delta = distance_m / radius_m;
  const double theta = deg2rad(bearing_deg);
  const double phi1 = deg2rad(start.lat);
  const double lam1 = deg2rad(start.lon);
  const double sin_phi2 =
      std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta);
  const double phi2 = std::asin(std::fmin(1.0, std::fmax(-1.0, sin_phi2)));
  const double lam2 = lam1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                        std::cos(delta) - std::sin(phi1) * sin_phi2);
  double lon = rad2deg(lam2);
  if (lon >= 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
  return {rad2deg(phi2), lon};
}

double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = deg2rad(a.lat), phi2 = deg2rad(b.lat);
  const double dlam = deg2rad(b.lon - a.lon);
  const double y = std::sin(dlam) * std::cos(phi2);
  const double x =
      std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlam);
  double bearing = rad2deg(std::atan2(y, x));
  if (bearing < 0.0) bearing += 360.0;
  if (bearing >= 360.0) bearing -= 360.0;
  return bearing;
}

}  // namespace fishmap
