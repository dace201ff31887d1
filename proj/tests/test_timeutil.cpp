// SPDX-License-Identifier: Apache-2.0
#include "fishmap/timeutil.hpp"

#include "doctest.h"

using namespace fishmap;

TEST_CASE("known instants parse to their unix seconds") {
  CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601_utc("1970-01-01T00:00:01Z") == 1);
  CHECK(parse_iso8601_utc("1999-12-31T23:59:59Z") == 946684799);
  CHECK(parse_iso8601_utc("2014-09-01T00:00:00Z") == 1409529600);
  CHECK(parse_iso8601_utc("2020-02-29T12:34:56Z") == 1582979696);
  CHECK(parse_iso8601_utc("1969-12-31T23:59:59Z") == -1);
}

TEST_CASE("format is the exact inverse of parse") {
  CHECK(format_iso8601_utc(0) == "1970-01-01T00:00:00Z");
  CHECK(format_iso8601_utc(1582979696) == "2020-02-29T12:34:56Z");
  CHECK(format_iso8601_utc(-1) == "1969-12-31T23:59:59Z");
  for (std::int64_t t : {0LL, 1409529600LL, 946684799LL, -86400LL, 4102444800LL}) {
    const auto parsed = parse_iso8601_utc(format_iso8601_utc(t));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == t);
  }
}

TEST_CASE("calendar rules are enforced") {
  CHECK(parse_iso8601_utc("2020-02-29T00:00:00Z").has_value());   // leap year
  CHECK(!parse_iso8601_utc("2021-02-29T00:00:00Z").has_value());  // not a leap year
  CHECK(!parse_iso8601_utc("1900-02-29T00:00:00Z").has_value());  // century rule
  CHECK(parse_iso8601_utc("2000-02-29T00:00:00Z").has_value());   // 400-year rule
  CHECK(!parse_iso8601_utc("2020-04-31T00:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-00-10T00:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-13-10T00:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-01-00T00:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-01-32T00:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-01-01T24:00:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-01-01T00:60:00Z").has_value());
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:60Z").has_value());
}

TEST_CASE("only the exact 20-character UTC form is accepted") {
  CHECK(!parse_iso8601_utc("").has_value());
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:00").has_value());        // missing Z
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:00z").has_value());       // lowercase z
  CHECK(!parse_iso8601_utc("2020-01-01 00:00:00Z").has_value());       // space separator
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:00+00:00").has_value());  // offset form
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:00.5Z").has_value());     // fraction
  CHECK(!parse_iso8601_utc("2020-1-01T00:00:00Z").has_value());        // unpadded
  CHECK(!parse_iso8601_utc("2020-01-01T00:00:00ZZ").has_value());      // trailing junk
  CHECK(!parse_iso8601_utc("20x0-01-01T00:00:00Z").has_value());
}

TEST_CASE("floor_div rounds toward negative infinity") {
  CHECK(floor_div(7, 3) == 2);
  CHECK(floor_div(6, 3) == 2);
  CHECK(floor_div(0, 3) == 0);
  CHECK(floor_div(-1, 3) == -1);
  CHECK(floor_div(-3, 3) == -1);
  CHECK(floor_div(-4, 3) == -2);
  CHECK(floor_div(-7, 300) == -1);
}
