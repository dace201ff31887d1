// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fishmap {

inline constexpr double kAuthalicRadiusM = 6'371'007.181;
inline constexpr double kKnotsToMps = 1852.0 / 3600.0;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double deg2rad(double d) { return d * (kPi / 180.0); }
constexpr double rad2deg(double r) { return r * (180.0 / kPi); }

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

/// Central angle between two points on the unit sphere, radians.
double central_angle(const GeoPoint& a, const GeoPoint& b);

/// Great-circle (spherical linear) interpolation. fraction 0 -> a, 1 -> b.
/// Falls back to the shorter chord when the points nearly coincide.
GeoPoint slerp_position(const GeoPoint& a, const GeoPoint& b, double fraction);

/// Point reached from `start` after `distance_m` along the initial bearing
/// (degrees clockwise from north) on a sphere of radius `radius_m`.
GeoPoint destination_point(const GeoPoint& start, double bearing_deg, double distance_m,
                           double radius_m = kAuthalicRadiusM);

/// Initial great-circle bearing from a to b, degrees in [0, 360).
double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b);

}  // namespace fishmap
