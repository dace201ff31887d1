// SPDX-License-Identifier: Apache-2.0
#include "fishmap/tracks.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"

using namespace fishmap;

namespace {

AisMessage msg(Mmsi mmsi, std::int64_t t, double sog = 1.0, double lat = 55.0,
               double lon = 4.0) {
  AisMessage m;
  m.mmsi = mmsi;
  m.timestamp = t;
  m.lat = lat;
  m.lon = lon;
  m.sog = sog;
  return m;
}

bool same_points(const VesselTrack& a, const VesselTrack& b) {
  if (a.mmsi != b.mmsi || a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& p = a.points[i];
    const auto& q = b.points[i];
    if (p.timestamp != q.timestamp || p.lat != q.lat || p.lon != q.lon || p.sog != q.sog ||
        p.cog != q.cog) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("build_tracks groups by vessel and sorts by time") {
  const auto tracks = build_tracks(
      {msg(2, 100), msg(1, 300), msg(1, 100), msg(2, 50), msg(1, 200)});
  REQUIRE(tracks.size() == 2);
  CHECK(tracks[0].mmsi == 1);
  CHECK(tracks[1].mmsi == 2);
  REQUIRE(tracks[0].points.size() == 3);
  CHECK(tracks[0].points[0].timestamp == 100);
  CHECK(tracks[0].points[1].timestamp == 200);
  CHECK(tracks[0].points[2].timestamp == 300);
  CHECK(tracks[1].points[0].timestamp == 50);
}

TEST_CASE("same-second duplicates collapse to one point") {
  const auto tracks = build_tracks({msg(1, 100, 3.0), msg(1, 100, 5.0), msg(1, 100, 3.0)});
  REQUIRE(tracks.size() == 1);
  REQUIRE(tracks[0].points.size() == 1);
  // the total order keeps the smallest payload, not the input-first one
  CHECK(tracks[0].points[0].sog == doctest::Approx(3.0));
}

TEST_CASE("build_tracks is invariant under input permutation") {
  std::vector<AisMessage> messages;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    messages.push_back(msg(static_cast<Mmsi>(1 + rng() % 3),
                           static_cast<std::int64_t>(rng() % 50),
                           static_cast<double>(rng() % 100) / 10.0));
  }
  const auto base = build_tracks(messages);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(messages.begin(), messages.end(), rng);
    const auto shuffled = build_tracks(messages);
    REQUIRE(shuffled.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(same_points(base[i], shuffled[i]));
    }
  }
}

TEST_CASE("window_index uses an epoch-anchored floor lattice") {
  const DecimationConfig c{300, 0};
  CHECK(c.window_index(0) == 0);
  CHECK(c.window_index(299) == 0);
  CHECK(c.window_index(300) == 1);
  CHECK(c.window_index(-1) == -1);    // pre-epoch timestamps share the lattice
  CHECK(c.window_index(-300) == -1);
  CHECK(c.window_index(-301) == -2);
  CHECK(c.quantum_minutes() == doctest::Approx(5.0));

  const DecimationConfig shifted{300, 100};
  CHECK(shifted.window_index(99) == -1);
  CHECK(shifted.window_index(100) == 0);
  CHECK(shifted.window_index(399) == 0);
  CHECK(shifted.window_index(400) == 1);
}

TEST_CASE("decimate keeps the earliest point of each window") {
  VesselTrack track;
  track.mmsi = 1;
  // windows: [0,300) [300,600) [600,900) [900,1200)
  for (std::int64_t t : {0, 60, 299, 300, 301, 899, 900}) {
    track.points.push_back(msg(1, t, static_cast<double>(t)));
  }
  const auto d = decimate(track, {300, 0});
  REQUIRE(d.points.size() == 4);
  CHECK(d.points[0].timestamp == 0);
  CHECK(d.points[1].timestamp == 300);
  CHECK(d.points[2].timestamp == 899);
  CHECK(d.points[3].timestamp == 900);
}

TEST_CASE("decimation is idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    VesselTrack track;
    track.mmsi = 1;
    std::int64_t t = static_cast<std::int64_t>(rng() % 1000) - 500;
    for (int i = 0; i < 100; ++i) {
      track.points.push_back(msg(1, t));
      t += 1 + static_cast<std::int64_t>(rng() % 400);
    }
    const DecimationConfig c{300, 0};
    const auto once = decimate(track, c);
    const auto twice = decimate(once, c);
    CHECK(same_points(once, twice));
  }
}

TEST_CASE("speed_profile reports every point speed unfiltered") {
  VesselTrack track;
  track.mmsi = 1;
  track.points = {msg(1, 0, 0.0), msg(1, 1, 0.4), msg(1, 2, 3.5), msg(1, 3, 10.2)};
  const auto speeds = speed_profile(track);
  REQUIRE(speeds.size() == 4);
  CHECK(speeds[0] == 0.0);
  CHECK(speeds[1] == doctest::Approx(0.4));
  CHECK(speeds[3] == doctest::Approx(10.2));
}
