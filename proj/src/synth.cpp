// SPDX-License-Identifier: Apache-2.0
#include "fishmap/synth.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "fishmap/errors.hpp"

namespace fishmap {

namespace {

// mt19937_64 output is specified bit for bit by the standard, but the
// std::*_distribution adaptors are not; these hand-rolled transforms keep
// the generated fleets byte-identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double gauss(std::mt19937_64& rng, double mu, double sigma) {
  const double u1 = std::max(uniform01(rng), 0x1.0p-53);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  return mu + sigma * z;
}

// Reported speeds are non-negative and carry one decimal, like real AIS.
double draw_speed(std::mt19937_64& rng, double mu, double sigma) {
  double v;
  do {
    v = gauss(rng, mu, sigma);
  } while (v < 0.0);
  return std::round(v * 10.0) / 10.0;
}

double wrap_deg(double d) {
  d = std::fmod(d, 360.0);
  if (d < 0.0) d += 360.0;
  return d;
}

}  // namespace

LabeledTrack gen_fishing_vessel(const SynthVesselParams& params, std::int64_t duration_s,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LabeledTrack out;
  out.truth.mmsi = params.mmsi;
  out.received.mmsi = params.mmsi;

  ActivityState state = ActivityState::fishing;
  GeoPoint pos{params.start_lat, params.start_lon};
  double heading = uniform01(rng) * 360.0;

  for (std::int64_t t = params.start_time; t < params.start_time + duration_s;
       t += params.report_period_s) {
    const bool fishing = state == ActivityState::fishing;
    const double sog = draw_speed(rng, fishing ? params.mu_fish : params.mu_steam,
                                  fishing ? params.sigma_fish : params.sigma_steam);
    heading = wrap_deg(heading + gauss(rng, 0.0, params.heading_sigma_deg));

    AisMessage msg;
    msg.mmsi = params.mmsi;
    msg.timestamp = t;
    msg.lat = pos.lat;
    msg.lon = pos.lon;
    msg.sog = sog;
    msg.cog = heading;
    out.truth.points.push_back(msg);
    out.labels.push_back(state);

    pos = destination_point(pos, heading,
                            sog * kKnotsToMps * static_cast<double>(params.report_period_s));
    if (uniform01(rng) >= params.p_stay) {
      state = fishing ? ActivityState::steaming : ActivityState::fishing;
    }
    if (params.reception_p >= 1.0 || uniform01(rng) < params.reception_p) {
      out.received.points.push_back(msg);
    }
  }
  return out;
}

VesselTrack gen_cruiser(Mmsi mmsi, std::span<const GeoPoint> waypoints, double speed_kn,
                        std::int64_t report_period_s, double reception_p, std::uint64_t seed,
                        std::int64_t start_time) {
  if (waypoints.size() < 2) throw ConfigError("cruiser route needs at least 2 waypoints");
  std::mt19937_64 rng(seed);
  VesselTrack track;
  track.mmsi = mmsi;

  const double sog = std::round(speed_kn * 10.0) / 10.0;
  const double step_m = sog * kKnotsToMps * static_cast<double>(report_period_s);

  std::size_t leg = 0;
  double leg_len_m = central_angle(waypoints[0], waypoints[1]) * kAuthalicRadiusM;
  double along_m = 0.0;  // distance travelled into the current leg
  std::int64_t t = start_time;

  while (true) {
    // spill whole legs before locating the position inside the current one
    while (along_m >= leg_len_m) {
      along_m -= leg_len_m;
      ++leg;
      if (leg + 1 >= waypoints.size()) break;
      leg_len_m = central_angle(waypoints[leg], waypoints[leg + 1]) * kAuthalicRadiusM;
    }
    if (leg + 1 >= waypoints.size()) break;

    const double frac = leg_len_m > 0.0 ? along_m / leg_len_m : 0.0;
    const GeoPoint pos = slerp_position(waypoints[leg], waypoints[leg + 1], frac);

    AisMessage msg;
    msg.mmsi = mmsi;
    msg.timestamp = t;
    msg.lat = pos.lat;
    msg.lon = pos.lon;
    msg.sog = sog;
    msg.cog = initial_bearing_deg(pos, waypoints[leg + 1]);
    if (reception_p >= 1.0 || uniform01(rng) < reception_p) {
      track.points.push_back(msg);
    }

    along_m += step_m;
    t += report_period_s;
  }
  return track;
}

ClassificationScore score_classification(std::span<const FishingPoint> predicted,
                                         const std::vector<LabeledTrack>& truth,
                                         const std::vector<VesselTrack>* universe) {
  using Key = std::pair<Mmsi, std::int64_t>;
  std::map<Key, ActivityState> labels;
  for (const auto& lt : truth) {
    for (std::size_t i = 0; i < lt.truth.points.size(); ++i) {
      labels.emplace(Key{lt.truth.mmsi, lt.truth.points[i].timestamp}, lt.labels[i]);
    }
  }

  std::set<Key> predicted_keys;
  ClassificationScore score;
  for (const auto& p : predicted) {
    const Key key{p.mmsi, p.timestamp};
    const auto it = labels.find(key);
    if (it == labels.end()) {
      throw PointNotInTruthError("predicted point (" + std::to_string(p.mmsi) + ", " +
                                 std::to_string(p.timestamp) + ") has no ground-truth label");
    }
    predicted_keys.insert(key);
    if (it->second == ActivityState::fishing) {
      ++score.tp;
    } else {
      ++score.fp;
    }
  }

  auto count_missed = [&](Mmsi mmsi, std::int64_t ts) {
    const Key key{mmsi, ts};
    const auto it = labels.find(key);
    if (it != labels.end() && it->second == ActivityState::fishing &&
        !predicted_keys.contains(key)) {
      ++score.fn;
    }
  };
  if (universe) {
    for (const auto& track : *universe) {
      for (const auto& p : track.points) count_missed(track.mmsi, p.timestamp);
    }
  } else {
    for (const auto& lt : truth) {
      for (const auto& p : lt.truth.points) count_missed(lt.truth.mmsi, p.timestamp);
    }
  }

  if (score.tp + score.fp == 0) {
    score.precision = 1.0;
    score.zero_support = true;
  } else {
    score.precision =
        static_cast<double>(score.tp) / static_cast<double>(score.tp + score.fp);
  }
  if (score.tp + score.fn == 0) {
    score.recall = 1.0;
    score.zero_support = true;
  } else {
    score.recall = static_cast<double>(score.tp) / static_cast<double>(score.tp + score.fn);
  }
  return score;
}

const char* to_string(ActivityState s) {
  return s == ActivityState::fishing ? "fishing" : "steaming";
}

}  // namespace fishmap
