// SPDX-License-Identifier: Apache-2.0
#include "fishmap/synth.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fishmap/errors.hpp"

using namespace fishmap;

namespace {

bool identical(const VesselTrack& a, const VesselTrack& b) {
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

TEST_CASE("fishing vessel generation is deterministic in the seed") {
  const SynthVesselParams params;
  const LabeledTrack a = gen_fishing_vessel(params, 6 * 3600, 7);
  const LabeledTrack b = gen_fishing_vessel(params, 6 * 3600, 7);
  const LabeledTrack c = gen_fishing_vessel(params, 6 * 3600, 8);
  CHECK(identical(a.truth, b.truth));
  CHECK(identical(a.received, b.received));
  CHECK(!identical(a.truth, c.truth));
}

TEST_CASE("labels line up one to one with the truth track") {
  const LabeledTrack t = gen_fishing_vessel({}, 12 * 3600, 3);
  CHECK(t.labels.size() == t.truth.points.size());
  CHECK(t.truth.points.size() == 720);  // 12 h at one report per minute
  for (std::size_t i = 1; i < t.truth.points.size(); ++i) {
    CHECK(t.truth.points[i].timestamp - t.truth.points[i - 1].timestamp == 60);
  }
}

TEST_CASE("reported speeds are non-negative and quantized to 0.1 knots") {
  const LabeledTrack t = gen_fishing_vessel({}, 24 * 3600, 5);
  for (const auto& p : t.truth.points) {
    CHECK(p.sog >= 0.0);
    const double scaled = p.sog * 10.0;
    CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
  }
}

TEST_CASE("speeds track the labeled state around its mode") {
  const SynthVesselParams params;
  const LabeledTrack t = gen_fishing_vessel(params, 48 * 3600, 11);
  double fish_sum = 0.0, steam_sum = 0.0;
  std::size_t fish_n = 0, steam_n = 0;
  for (std::size_t i = 0; i < t.truth.points.size(); ++i) {
    if (t.labels[i] == ActivityState::fishing) {
      fish_sum += t.truth.points[i].sog;
      ++fish_n;
    } else {
      steam_sum += t.truth.points[i].sog;
      ++steam_n;
    }
  }
  REQUIRE(fish_n > 100);   // both states occur over two days
  REQUIRE(steam_n > 100);
  CHECK(fish_sum / static_cast<double>(fish_n) == doctest::Approx(3.5).epsilon(0.1));
  CHECK(steam_sum / static_cast<double>(steam_n) == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("full reception receives everything, zero reception nothing") {
  SynthVesselParams params;
  params.reception_p = 1.0;
  const LabeledTrack full = gen_fishing_vessel(params, 3600, 2);
  CHECK(identical(full.truth, full.received));

  params.reception_p = 0.0;
  const LabeledTrack silent = gen_fishing_vessel(params, 3600, 2);
  CHECK(silent.received.points.empty());
  CHECK(silent.truth.points.size() == 60);  // the truth track is unaffected
}

TEST_CASE("partial reception drops roughly the right share") {
  SynthVesselParams params;
  params.reception_p = 0.6;
  const LabeledTrack t = gen_fishing_vessel(params, 48 * 3600, 17);
  const double share = static_cast<double>(t.received.points.size()) /
                       static_cast<double>(t.truth.points.size());
  CHECK(share == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("cruisers hold course and speed along the route") {
  const std::vector<GeoPoint> route{{54.5, 2.8}, {54.5, 3.2}};
  const VesselTrack t = gen_cruiser(244000001, route, 12.0, 300, 1.0, 1);
  REQUIRE(t.points.size() > 10);
  for (const auto& p : t.points) {
    CHECK(p.sog == doctest::Approx(12.0));
    CHECK(p.lat == doctest::Approx(54.5).epsilon(1e-4));
    CHECK(p.lon >= 2.8 - 1e-9);
    CHECK(p.lon <= 3.2 + 1e-9);
  }
  // reports advance by a constant period
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    CHECK(t.points[i].timestamp - t.points[i - 1].timestamp == 300);
  }
  CHECK_THROWS_AS(gen_cruiser(1, std::vector<GeoPoint>{{54.5, 2.8}}, 12.0, 300, 1.0, 1),
                  ConfigError);
}

TEST_CASE("scoring matches hand-counted confusion cells") {
  LabeledTrack t;
  t.truth.mmsi = 1;
  for (int i = 0; i < 6; ++i) {
    AisMessage m;
    m.mmsi = 1;
    m.timestamp = i;
    t.truth.points.push_back(m);
  }
  t.labels = {ActivityState::fishing, ActivityState::fishing, ActivityState::steaming,
              ActivityState::steaming, ActivityState::fishing, ActivityState::steaming};
  const std::vector<LabeledTrack> truth{t};

  // predict points 0 (tp), 2 (fp), 4 (tp): misses point 1 (fn)
  std::vector<FishingPoint> predicted(3);
  predicted[0].mmsi = predicted[1].mmsi = predicted[2].mmsi = 1;
  predicted[0].timestamp = 0;
  predicted[1].timestamp = 2;
  predicted[2].timestamp = 4;

  const ClassificationScore s = score_classification(predicted, truth);
  CHECK(s.tp == 2);
  CHECK(s.fp == 1);
  CHECK(s.fn == 1);
  CHECK(s.precision == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall == doctest::Approx(2.0 / 3.0));
  CHECK(!s.zero_support);
}

TEST_CASE("the scoring universe can be restricted to what the pipeline saw") {
  LabeledTrack t;
  t.truth.mmsi = 1;
  for (int i = 0; i < 4; ++i) {
    AisMessage m;
    m.mmsi = 1;
    m.timestamp = i;
    t.truth.points.push_back(m);
  }
  t.labels.assign(4, ActivityState::fishing);

  VesselTrack seen;
  seen.mmsi = 1;
  seen.points = {t.truth.points[0], t.truth.points[2]};  // decimated view
  const std::vector<VesselTrack> universe{seen};

  std::vector<FishingPoint> predicted(1);
  predicted[0].mmsi = 1;
  predicted[0].timestamp = 0;

  const ClassificationScore s =
      score_classification(predicted, {t}, &universe);
  CHECK(s.tp == 1);
  CHECK(s.fn == 1);  // only the unseen-but-in-universe point at t=2 counts
  CHECK(s.recall == doctest::Approx(0.5));
}

TEST_CASE("a prediction outside the truth is a typed error") {
  LabeledTrack t;
  t.truth.mmsi = 1;
  AisMessage m;
  m.mmsi = 1;
  m.timestamp = 0;
  t.truth.points.push_back(m);
  t.labels.push_back(ActivityState::fishing);

  std::vector<FishingPoint> predicted(1);
  predicted[0].mmsi = 2;  // unknown vessel
  predicted[0].timestamp = 0;
  CHECK_THROWS_AS(score_classification(predicted, {t}), PointNotInTruthError);
}

TEST_CASE("empty predictions give zero-support precision by convention") {
  LabeledTrack t;
  t.truth.mmsi = 1;
  AisMessage m;
  m.mmsi = 1;
  m.timestamp = 0;
  t.truth.points.push_back(m);
  t.labels.push_back(ActivityState::steaming);  // nothing to recall either

  const ClassificationScore s = score_classification({}, {t});
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.zero_support);
}
