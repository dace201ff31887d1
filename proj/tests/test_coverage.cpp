// SPDX-License-Identifier: Apache-2.0
#include "fishmap/coverage.hpp"

#include <cmath>

#include "doctest.h"
#include "fishmap/errors.hpp"

using namespace fishmap;

namespace {

AisMessage msg(Mmsi mmsi, std::int64_t t, double sog, double lat = 55.0, double lon = 4.0) {
  AisMessage m;
  m.mmsi = mmsi;
  m.timestamp = t;
  m.lat = lat;
  m.lon = lon;
  m.sog = sog;
  return m;
}

}  // namespace

TEST_CASE("cruise segments cover only fast points and split at slow ones") {
  VesselTrack track;
  track.mmsi = 1;
  for (auto [t, sog] : std::initializer_list<std::pair<std::int64_t, double>>{
           {0, 10.0}, {300, 9.0}, {600, 3.0}, {900, 12.0}, {1200, 11.0}, {1500, 8.0}}) {
    track.points.push_back(msg(1, t, sog));
  }
  const auto segments = extract_cruise_segments(track, CoverageConfig{});
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].points.size() == 2);
  CHECK(segments[0].span_s == 300);
  CHECK(segments[1].points.size() == 3);
  CHECK(segments[1].points.front().timestamp == 900);
  // 8.0 kn is cruising: the threshold is inclusive
  CHECK(segments[1].points.back().sog == doctest::Approx(8.0));
}

TEST_CASE("cruise segments split across long dark gaps") {
  VesselTrack track;
  track.mmsi = 1;
  track.points = {msg(1, 0, 10.0), msg(1, 300, 10.0), msg(1, 300 + 21601, 10.0)};
  CoverageConfig config;
  const auto segments = extract_cruise_segments(track, config);
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].points.size() == 2);
  CHECK(segments[1].points.size() == 1);

  // a gap exactly at the limit stays one segment
  track.points = {msg(1, 0, 10.0), msg(1, 21600, 10.0)};
  CHECK(extract_cruise_segments(track, config).size() == 1);
}

TEST_CASE("expected positions interpolate along the great circle per lattice tick") {
  CruiseSegment segment;
  segment.mmsi = 1;
  segment.points = {msg(1, 0, 10.0, 0.0, 0.0), msg(1, 600, 10.0, 0.0, 0.1)};
  const auto expected = interpolate_expected(segment, DecimationConfig{300, 0});
  REQUIRE(expected.size() == 3);
  CHECK(expected[0].timestamp == 0);
  CHECK(expected[0].pos.lat == doctest::Approx(0.0));
  CHECK(expected[0].pos.lon == doctest::Approx(0.0));
  CHECK(expected[1].timestamp == 300);
  // midpoint along the equator lies at half the longitude span
  CHECK(expected[1].pos.lat == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(expected[1].pos.lon == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(expected[2].timestamp == 600);
  CHECK(expected[2].pos.lon == doctest::Approx(0.1));
}

TEST_CASE("off-lattice endpoints only yield interior ticks") {
  CruiseSegment segment;
  segment.mmsi = 1;
  segment.points = {msg(1, 100, 10.0), msg(1, 700, 10.0)};
  const auto expected = interpolate_expected(segment, DecimationConfig{300, 0});
  REQUIRE(expected.size() == 2);
  CHECK(expected[0].timestamp == 300);
  CHECK(expected[1].timestamp == 600);
}

TEST_CASE("a single-point segment expects exactly itself") {
  CruiseSegment segment;
  segment.mmsi = 1;
  segment.points = {msg(1, 123, 10.0)};
  const auto expected = interpolate_expected(segment, DecimationConfig{300, 0});
  REQUIRE(expected.size() == 1);
  CHECK(expected[0].timestamp == 123);
  CHECK(expected[0].pos.lat == doctest::Approx(55.0));
}

TEST_CASE("the worked two-report example expects seven lattice slots") {
  // two received reports 30 minutes apart: slots at 0, 300, ..., 1800
  VesselTrack track;
  track.mmsi = 1;
  track.points = {msg(1, 0, 10.0, 55.0, 4.0), msg(1, 1800, 10.0, 55.001, 4.001)};
  const CoverageRaster raster = coverage_map({track}, CoverageConfig{}, GridSpec{});
  std::uint64_t received = 0, expected = 0;
  for (const auto& [cell, n] : raster.received) received += n;
  for (const auto& [cell, n] : raster.expected) expected += n;
  CHECK(received == 2);
  CHECK(expected == 7);
}

TEST_CASE("full reception on the lattice gives ratio one everywhere") {
  VesselTrack track;
  track.mmsi = 1;
  for (int i = 0; i <= 24; ++i) {
    track.points.push_back(msg(1, 300 * i, 12.0, 55.0, 4.0 + 0.01 * i));
  }
  const CoverageRaster raster = coverage_map({track}, CoverageConfig{}, GridSpec{});
  REQUIRE(!raster.expected.empty());
  for (const auto& [cell, n] : raster.expected) {
    const auto r = raster.ratio(cell);
    REQUIRE(r.has_value());
    CHECK(*r == 1.0);
  }
}

TEST_CASE("slow vessels contribute nothing to coverage") {
  VesselTrack track;
  track.mmsi = 1;
  track.points = {msg(1, 0, 3.0), msg(1, 300, 4.0), msg(1, 600, 2.0)};
  const CoverageRaster raster = coverage_map({track}, CoverageConfig{}, GridSpec{});
  CHECK(raster.received.empty());
  CHECK(raster.expected.empty());
  CHECK(!raster.ratio({0, 0}).has_value());
}

TEST_CASE("the ratio clips at one when received exceeds expected") {
  CoverageRaster raster;
  raster.expected[{5, 5}] = 2;
  raster.received[{5, 5}] = 3;
  CHECK(*raster.ratio({5, 5}) == 1.0);
}

TEST_CASE("reliability join flags low and missing coverage per density cell") {
  GridSpec spec;
  DensityRaster density;
  density.spec = spec;
  density.quantum_minutes = 5.0;
  density.cells[{1, 1}] = 3;  // covered well
  density.cells[{2, 2}] = 4;  // covered poorly
  density.cells[{3, 3}] = 5;  // no coverage info
  density.total = 12;

  CoverageRaster coverage;
  coverage.spec = spec;
  coverage.expected[{1, 1}] = 10;
  coverage.received[{1, 1}] = 9;
  coverage.expected[{2, 2}] = 10;
  coverage.received[{2, 2}] = 2;

  const auto rows = reliability_join(density, coverage);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].cell == CellIndex{1, 1});
  CHECK(rows[0].count == 3);
  CHECK(rows[0].minutes == doctest::Approx(15.0));
  CHECK(*rows[0].ratio == doctest::Approx(0.9));
  CHECK(!rows[0].low_coverage);
  CHECK(!rows[0].no_coverage_info);
  CHECK(rows[1].low_coverage);
  CHECK(rows[2].no_coverage_info);
  CHECK(!rows[2].ratio.has_value());

  CoverageRaster other;
  other.spec.cell_size = 500.0;
  CHECK_THROWS_AS(reliability_join(density, other), GridSpecMismatchError);
}
