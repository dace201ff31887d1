// SPDX-License-Identifier: Apache-2.0
#include "fishmap/ingest.hpp"

#include <sstream>
#include <string>

#include "doctest.h"
#include "fishmap/errors.hpp"

using namespace fishmap;

namespace {

ParsedAis parse(const std::string& text, Strictness s = Strictness::lenient) {
  std::istringstream in(text);
  return parse_ais_csv(in, s);
}

const std::string kHeader = "mmsi,timestamp,lat,lon,sog,cog\n";

}  // namespace

TEST_CASE("well-formed rows parse with all fields") {
  const auto r = parse(kHeader +
                       "228000001,2014-09-01T00:00:00Z,55.500000,4.250000,3.50,270.0\n"
                       "228000002,2014-09-01T00:00:10Z,-12.000000,-170.500000,0.00,\n");
  REQUIRE(r.messages.size() == 2);
  CHECK(r.report.rows_read == 2);
  CHECK(r.report.rows_accepted == 2);
  CHECK(r.report.rows_rejected == 0);

  const AisMessage& m = r.messages[0];
  CHECK(m.mmsi == 228000001u);
  CHECK(m.timestamp == 1409529600);
  CHECK(m.lat == doctest::Approx(55.5));
  CHECK(m.lon == doctest::Approx(4.25));
  CHECK(m.sog == doctest::Approx(3.5));
  REQUIRE(m.cog.has_value());
  CHECK(*m.cog == doctest::Approx(270.0));
  CHECK(!r.messages[1].cog.has_value());  // cog is optional
}

TEST_CASE("leading comment lines and CRLF endings are tolerated") {
  const auto r = parse("# produced by a previous run\r\n# second line\r\n" + kHeader +
                       "228000001,2014-09-01T00:00:00Z,55.0,4.0,3.5,\r\n");
  CHECK(r.messages.size() == 1);
}

TEST_CASE("a missing or misnamed header is an error in both modes") {
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("mmsi,timestamp,lat,lon,sog\n"), InputError);
  CHECK_THROWS_AS(parse("228000001,2014-09-01T00:00:00Z,55.0,4.0,3.5,\n"), InputError);
  CHECK_THROWS_AS(parse("mmsi,timestamp,lat,lon,sog\n", Strictness::strict), InputError);
}

TEST_CASE("lenient mode counts bad rows per reason and keeps going") {
  const auto r = parse(kHeader +
                       "123,2014-09-01T00:00:00Z,55.0,4.0,3.5,\n"       // short mmsi
                       "22800000a,2014-09-01T00:00:00Z,55.0,4.0,3.5,\n" // non-digit mmsi
                       "228000001,2014-09-01 00:00:00,55.0,4.0,3.5,\n"  // bad timestamp
                       "228000001,2014-09-01T00:00:00Z,95.0,4.0,3.5,\n" // lat range
                       "228000001,2014-09-01T00:00:00Z,55.0,181.0,3.5,\n" // lon range
                       "228000001,2014-09-01T00:00:00Z,55.0,4.0,-1.0,\n"  // negative sog
                       "228000001,2014-09-01T00:00:00Z,55.0,4.0,3.5,360.0\n" // cog range
                       "228000001,2014-09-01T00:00:00Z,55.0,4.0,3.5\n"       // field count
                       "228000001,2014-09-01T00:00:00Z,55.0,4.0,3.5,\n");    // good
  CHECK(r.messages.size() == 1);
  CHECK(r.report.rows_read == 9);
  CHECK(r.report.rows_rejected == 8);
  CHECK(r.report.rejection_histogram.at("mmsi_invalid") == 2);
  CHECK(r.report.rejection_histogram.at("timestamp_invalid") == 1);
  CHECK(r.report.rejection_histogram.at("lat_out_of_range") == 1);
  CHECK(r.report.rejection_histogram.at("lon_out_of_range") == 1);
  CHECK(r.report.rejection_histogram.at("sog_invalid") == 1);
  CHECK(r.report.rejection_histogram.at("cog_invalid") == 1);
  CHECK(r.report.rejection_histogram.at("field_count") == 1);
}

TEST_CASE("strict mode aborts on the first bad row with its line number") {
  const std::string text = kHeader + "228000001,2014-09-01T00:00:00Z,95.0,4.0,3.5,\n";
  CHECK_THROWS_WITH_AS(parse(text, Strictness::strict), doctest::Contains("line 2"),
                       InputError);
}

TEST_CASE("boundary coordinates are accepted, just-outside rejected") {
  const auto ok = parse(kHeader +
                        "228000001,2014-09-01T00:00:00Z,90.0,180.0,0.0,0.0\n"
                        "228000002,2014-09-01T00:00:00Z,-90.0,-180.0,0.0,359.9\n");
  CHECK(ok.messages.size() == 2);
  const auto bad = parse(kHeader +
                         "228000001,2014-09-01T00:00:00Z,90.0001,0.0,0.0,\n"
                         "228000002,2014-09-01T00:00:00Z,0.0,-180.0001,0.0,\n");
  CHECK(bad.messages.empty());
}

TEST_CASE("fleet register parses and rejects duplicate cfr keys") {
  std::istringstream good("cfr,call_sign,mmsi,loa,gear_main,flag\n"
                          "NLD000001,PAAA,228000001,23.9,OTB,NL\n"
                          "NLD000002,PBBB,,18.2,TBB,NL\n"
                          "NLD000003,,228000003,12.0,GNS,NL\n");
  const auto reg = load_fleet_register(good);
  REQUIRE(reg.size() == 3);
  CHECK(reg[0].cfr == "NLD000001");
  REQUIRE(reg[0].mmsi.has_value());
  CHECK(*reg[0].mmsi == 228000001u);
  CHECK(!reg[1].mmsi.has_value());
  CHECK(reg[1].call_sign == "PBBB");
  CHECK(reg[2].loa == doctest::Approx(12.0));

  std::istringstream dup("cfr,call_sign,mmsi,loa,gear_main,flag\n"
                         "NLD000001,PAAA,228000001,23.9,OTB,NL\n"
                         "NLD000001,PBBB,228000002,18.2,TBB,NL\n");
  CHECK_THROWS_AS(load_fleet_register(dup), InputError);

  std::istringstream neither("cfr,call_sign,mmsi,loa,gear_main,flag\n"
                             "NLD000001,,,23.9,OTB,NL\n");
  CHECK_THROWS_AS(load_fleet_register(neither), InputError);

  std::istringstream badloa("cfr,call_sign,mmsi,loa,gear_main,flag\n"
                            "NLD000001,PAAA,228000001,0.0,OTB,NL\n");
  CHECK_THROWS_AS(load_fleet_register(badloa), InputError);
}

TEST_CASE("static pairs parse and reject duplicate mmsi") {
  std::istringstream good("mmsi,call_sign\n228000001,PAAA\n244000017,PBBB\n");
  const auto pairs = load_static_pairs(good);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs.at(228000001u) == "PAAA");

  std::istringstream dup("mmsi,call_sign\n228000001,PAAA\n228000001,PBBB\n");
  CHECK_THROWS_AS(load_static_pairs(dup), InputError);
}

TEST_CASE("link_vessels joins directly on mmsi and indirectly on call sign") {
  std::vector<AisMessage> messages;
  for (Mmsi mmsi : {228000001u, 228000001u, 244000017u, 999999999u}) {
    AisMessage m;
    m.mmsi = mmsi;
    messages.push_back(m);
  }
  std::vector<FleetRegisterRecord> reg(2);
  reg[0].cfr = "A";
  reg[0].mmsi = 228000001u;  // direct match
  reg[0].loa = 20.0;
  reg[1].cfr = "B";
  reg[1].call_sign = "PBBB";  // only reachable via the pairs table
  reg[1].loa = 20.0;
  StaticPairs pairs{{244000017u, "PBBB"}};

  const LinkResult r = link_vessels(messages, reg, pairs);
  CHECK(r.vessel_ids == std::set<Mmsi>{228000001u, 244000017u});
  CHECK(r.messages.size() == 3);
  CHECK(r.messages_dropped == 1);
  CHECK(r.matched_direct == 1);
  CHECK(r.matched_call_sign == 1);
}

TEST_CASE("link_vessels with nothing matching yields an empty result") {
  std::vector<AisMessage> messages(3);
  messages[0].mmsi = messages[1].mmsi = messages[2].mmsi = 111111111u;
  const LinkResult r = link_vessels(messages, {}, {});
  CHECK(r.vessel_ids.empty());
  CHECK(r.messages.empty());
  CHECK(r.messages_dropped == 3);
}
