// SPDX-License-Identifier: Apache-2.0
#include "fishmap/ingest.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <unordered_set>

#include "fishmap/errors.hpp"
#include "fishmap/timeutil.hpp"

namespace fishmap {

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Split into exactly N comma-separated fields; returns false on any other count.
template <std::size_t N>
bool split_fields(std::string_view line, std::array<std::string_view, N>& out) {
  std::size_t field = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (field >= N) return false;
      out[field++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  return field == N;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool parse_mmsi(std::string_view s, Mmsi& out) {
  if (s.size() != 9) return false;
  std::uint32_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint32_t>(c - '0');
  }
  out = v;
  return true;
}

// Reads the next content line, skipping leading '#' comments only at the
// head of the file (before any data has been seen).
bool next_line(std::istream& in, std::string& line, std::uint64_t& line_no, bool skip_comments) {
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_comments && !line.empty() && line[0] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void bad_row(std::uint64_t line_no, const std::string& reason) {
  throw InputError("line " + std::to_string(line_no) + ": " + reason);
}

constexpr std::string_view kAisHeader = "mmsi,timestamp,lat,lon,sog,cog";
constexpr std::string_view kRegisterHeader = "cfr,call_sign,mmsi,loa,gear_main,flag";
constexpr std::string_view kPairsHeader = "mmsi,call_sign";

void expect_header(std::istream& in, std::string_view expected, std::uint64_t& line_no) {
  std::string line;
  if (!next_line(in, line, line_no, true)) {
    throw InputError(std::string("empty stream: expected header `") + std::string(expected) +
                     "`");
  }
  if (strip_cr(line) != expected) {
    throw InputError("missing or misnamed header: expected `" + std::string(expected) +
                     "`, got `" + line + "`");
  }
}

// Returns the rejection reason, or nullptr when the row parsed cleanly.
const char* parse_ais_row(std::string_view line, AisMessage& msg) {
  std::array<std::string_view, 6> f;
  if (!split_fields(line, f)) return "field_count";
  if (!parse_mmsi(f[0], msg.mmsi)) return "mmsi_invalid";
  const auto ts = parse_iso8601_utc(f[1]);
  if (!ts) return "timestamp_invalid";
  msg.timestamp = *ts;
  if (!parse_double(f[2], msg.lat)) return "lat_invalid";
  if (msg.lat < -90.0 || msg.lat > 90.0) return "lat_out_of_range";
  if (!parse_double(f[3], msg.lon)) return "lon_invalid";
  if (msg.lon < -180.0 || msg.lon > 180.0) return "lon_out_of_range";
  if (!parse_double(f[4], msg.sog) || msg.sog < 0.0) return "sog_invalid";
  if (f[5].empty()) {
    msg.cog.reset();
  } else {
    double cog;
    if (!parse_double(f[5], cog) || cog < 0.0 || cog >= 360.0) return "cog_invalid";
    msg.cog = cog;
  }
  return nullptr;
}

}  // namespace

ParsedAis parse_ais_csv(std::istream& in, Strictness strictness) {
  if (!in) throw InputError("unreadable AIS stream");
  ParsedAis result;
  std::uint64_t line_no = 0;
  expect_header(in, kAisHeader, line_no);

  std::string line;
  while (next_line(in, line, line_no, false)) {
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;  // tolerate blank lines (trailing newline etc.)
    ++result.report.rows_read;
    AisMessage msg;
    if (const char* reason = parse_ais_row(row, msg)) {
      if (strictness == Strictness::strict) bad_row(line_no, reason);
      ++result.report.rows_rejected;
      ++result.report.rejection_histogram[reason];
      continue;
    }
    ++result.report.rows_accepted;
    result.messages.push_back(msg);
  }
  return result;
}

std::vector<FleetRegisterRecord> load_fleet_register(std::istream& in) {
  if (!in) throw InputError("unreadable fleet register stream");
  std::vector<FleetRegisterRecord> records;
  std::unordered_set<std::string> seen_cfr;
  std::uint64_t line_no = 0;
  expect_header(in, kRegisterHeader, line_no);

  std::string line;
  while (next_line(in, line, line_no, false)) {
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    std::array<std::string_view, 6> f;
    if (!split_fields(row, f)) bad_row(line_no, "expected 6 fields");

    FleetRegisterRecord rec;
    rec.cfr = std::string(f[0]);
    if (rec.cfr.empty()) bad_row(line_no, "empty cfr");
    if (!seen_cfr.insert(rec.cfr).second) bad_row(line_no, "duplicate cfr `" + rec.cfr + "`");
    rec.call_sign = std::string(f[1]);
    if (!f[2].empty()) {
      Mmsi m;
      if (!parse_mmsi(f[2], m)) bad_row(line_no, "mmsi must be 9 decimal digits");
      rec.mmsi = m;
    }
    if (rec.call_sign.empty() && !rec.mmsi) {
      bad_row(line_no, "record needs at least one of call_sign, mmsi");
    }
    if (!parse_double(f[3], rec.loa) || rec.loa <= 0.0) bad_row(line_no, "loa must be > 0");
    rec.gear_main = std::string(f[4]);
    if (rec.gear_main.empty()) bad_row(line_no, "empty gear_main");
    rec.flag = std::string(f[5]);
    records.push_back(std::move(rec));
  }
  return records;
}

StaticPairs load_static_pairs(std::istream& in) {
  if (!in) throw InputError("unreadable static-pairs stream");
  StaticPairs pairs;
  std::uint64_t line_no = 0;
  expect_header(in, kPairsHeader, line_no);

  std::string line;
  while (next_line(in, line, line_no, false)) {
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    std::array<std::string_view, 2> f;
    if (!split_fields(row, f)) bad_row(line_no, "expected 2 fields");
    Mmsi m;
    if (!parse_mmsi(f[0], m)) bad_row(line_no, "mmsi must be 9 decimal digits");
    if (f[1].empty()) bad_row(line_no, "empty call_sign");
    if (!pairs.emplace(m, std::string(f[1])).second) {
      bad_row(line_no, "duplicate mmsi in static pairs");
    }
  }
  return pairs;
}

LinkResult link_vessels(const std::vector<AisMessage>& messages,
                        const std::vector<FleetRegisterRecord>& reg,
                        const StaticPairs& static_pairs) {
  std::unordered_set<Mmsi> register_mmsis;
  std::unordered_set<std::string> register_call_signs;
  for (const auto& rec : reg) {
    if (rec.mmsi) register_mmsis.insert(*rec.mmsi);
    if (!rec.call_sign.empty()) register_call_signs.insert(rec.call_sign);
  }

  LinkResult result;
  std::unordered_set<Mmsi> matched, unmatched;
  for (const auto& msg : messages) {
    if (matched.contains(msg.mmsi)) {
      result.messages.push_back(msg);
      continue;
    }
    if (unmatched.contains(msg.mmsi)) {
      ++result.messages_dropped;
      continue;
    }
    bool ok = false;
    if (register_mmsis.contains(msg.mmsi)) {
      ok = true;
      ++result.matched_direct;
    } else if (auto it = static_pairs.find(msg.mmsi);
               it != static_pairs.end() && register_call_signs.contains(it->second)) {
      ok = true;
      ++result.matched_call_sign;
    }
    if (ok) {
      matched.insert(msg.mmsi);
      result.vessel_ids.insert(msg.mmsi);
      result.messages.push_back(msg);
    } else {
      unmatched.insert(msg.mmsi);
      ++result.messages_dropped;
    }
  }
  return result;
}

}  // namespace fishmap
