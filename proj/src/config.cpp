// SPDX-License-Identifier: Apache-2.0
#include "fishmap/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "fishmap/errors.hpp"

namespace fishmap {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);  // exact round trip
  return buf;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ConfigError("invalid value `" + value + "` for key `" + key + "`");
}

double to_double(const std::string& key, const std::string& value) {
  double out;
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc{} || ptr != last || !std::isfinite(out)) bad_value(key, value);
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value) {
  Int out;
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc{} || ptr != last) bad_value(key, value);
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void RunConfig::validate() const {
  require(window_s > 0, "window_s must be > 0");
  require(em.min_speed >= 0.0, "em.min_speed must be >= 0");
  require(em.min_samples >= 2, "em.min_samples must be >= 2");
  require(em.max_iter >= 1, "em.max_iter must be >= 1");
  require(em.rel_tol > 0.0, "em.rel_tol must be > 0");
  require(em.var_floor > 0.0, "em.var_floor must be > 0");
  require(em.n_restarts >= 1, "em.n_restarts must be >= 1");
  require(k > 0.0, "k must be > 0");
  require(grid.cell_size > 0.0, "grid.cell_size must be > 0");
  require(grid.sphere_radius > 0.0, "grid.sphere_radius must be > 0");
  require(grid.center_lat >= -90.0 && grid.center_lat <= 90.0,
          "grid.center_lat must be in [-90, 90]");
  require(grid.center_lon >= -180.0 && grid.center_lon <= 180.0,
          "grid.center_lon must be in [-180, 180]");
  require(cruise_min >= 0.0, "cruise_min must be >= 0");
  require(max_gap_s > 0, "max_gap_s must be > 0");
  require(threads >= 1, "threads must be >= 1");
  require(synth_hours > 0.0, "synth_hours must be > 0");
  require(synth_report_period_s > 0, "synth_report_period_s must be > 0");
  require(synth_reception_p >= 0.0 && synth_reception_p <= 1.0,
          "synth_reception_p must be in [0, 1]");
  require(synth_cruise_speed_kn > 0.0, "synth_cruise_speed_kn must be > 0");
}

std::vector<std::pair<std::string, std::string>> RunConfig::canonical_items() const {
  // threads is an execution detail, not configuration identity: results are
  // required to be independent of it, so it stays out of hash and headers.
  std::vector<std::pair<std::string, std::string>> items = {
      {"ambiguous_policy", to_string(ambiguous_policy)},
      {"band_applies_to_filtered", band_applies_to_filtered ? "true" : "false"},
      {"cruise_min", fmt_double(cruise_min)},
      {"decimate_before_fit", decimate_before_fit ? "true" : "false"},
      {"em.max_iter", std::to_string(em.max_iter)},
      {"em.min_samples", std::to_string(em.min_samples)},
      {"em.min_speed", fmt_double(em.min_speed)},
      {"em.n_restarts", std::to_string(em.n_restarts)},
      {"em.rel_tol", fmt_double(em.rel_tol)},
      {"em.seed", std::to_string(em.seed)},
      {"em.var_floor", fmt_double(em.var_floor)},
      {"grid.cell_size", fmt_double(grid.cell_size)},
      {"grid.center_lat", fmt_double(grid.center_lat)},
      {"grid.center_lon", fmt_double(grid.center_lon)},
      {"grid.false_easting", fmt_double(grid.false_easting)},
      {"grid.false_northing", fmt_double(grid.false_northing)},
      {"grid.sphere_radius", fmt_double(grid.sphere_radius)},
      {"k", fmt_double(k)},
      {"max_gap_s", std::to_string(max_gap_s)},
      {"strictness", strictness == Strictness::strict ? "strict" : "lenient"},
      {"synth_cruise_speed_kn", fmt_double(synth_cruise_speed_kn)},
      {"synth_cruisers", std::to_string(synth_cruisers)},
      {"synth_fishing_vessels", std::to_string(synth_fishing_vessels)},
      {"synth_hours", fmt_double(synth_hours)},
      {"synth_reception_p", fmt_double(synth_reception_p)},
      {"synth_report_period_s", std::to_string(synth_report_period_s)},
      {"synth_seed", std::to_string(synth_seed)},
      {"window_s", std::to_string(window_s)},
  };
  return items;
}

std::string RunConfig::config_hash() const {
  // FNV-1a 64 over the canonical serialization
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [key, value] : canonical_items()) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> RunConfig::output_header_lines() const {
  std::vector<std::string> lines;
  lines.push_back(kToolVersion);
  lines.push_back("config " + config_hash());
  for (const auto& [key, value] : canonical_items()) lines.push_back(key + "=" + value);
  return lines;
}

void RunConfig::apply_assignment(const std::string& key, const std::string& value) {
  if (key == "window_s") {
    window_s = to_int<std::int64_t>(key, value);
  } else if (key == "decimate_before_fit") {
    decimate_before_fit = to_bool(key, value);
  } else if (key == "em.min_speed") {
    em.min_speed = to_double(key, value);
  } else if (key == "em.min_samples") {
    em.min_samples = to_int<std::size_t>(key, value);
  } else if (key == "em.max_iter") {
    em.max_iter = to_int<std::size_t>(key, value);
  } else if (key == "em.rel_tol") {
    em.rel_tol = to_double(key, value);
  } else if (key == "em.var_floor") {
    em.var_floor = to_double(key, value);
  } else if (key == "em.seed") {
    em.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "em.n_restarts") {
    em.n_restarts = to_int<std::size_t>(key, value);
  } else if (key == "k") {
    k = to_double(key, value);
  } else if (key == "ambiguous_policy") {
    if (value == "include") {
      ambiguous_policy = AmbiguousPolicy::include;
    } else if (value == "exclude") {
      ambiguous_policy = AmbiguousPolicy::exclude;
    } else {
      bad_value(key, value);
    }
  } else if (key == "band_applies_to_filtered") {
    band_applies_to_filtered = to_bool(key, value);
  } else if (key == "grid.center_lat") {
    grid.center_lat = to_double(key, value);
  } else if (key == "grid.center_lon") {
    grid.center_lon = to_double(key, value);
  } else if (key == "grid.false_easting") {
    grid.false_easting = to_double(key, value);
  } else if (key == "grid.false_northing") {
    grid.false_northing = to_double(key, value);
  } else if (key == "grid.cell_size") {
    grid.cell_size = to_double(key, value);
  } else if (key == "grid.sphere_radius") {
    grid.sphere_radius = to_double(key, value);
  } else if (key == "cruise_min") {
    cruise_min = to_double(key, value);
  } else if (key == "max_gap_s") {
    max_gap_s = to_int<std::int64_t>(key, value);
  } else if (key == "strictness") {
    if (value == "strict") {
      strictness = Strictness::strict;
    } else if (value == "lenient") {
      strictness = Strictness::lenient;
    } else {
      bad_value(key, value);
    }
  } else if (key == "threads") {
    threads = to_int<unsigned>(key, value);
  } else if (key == "synth_seed") {
    synth_seed = to_int<std::uint64_t>(key, value);
  } else if (key == "synth_fishing_vessels") {
    synth_fishing_vessels = to_int<std::size_t>(key, value);
  } else if (key == "synth_cruisers") {
    synth_cruisers = to_int<std::size_t>(key, value);
  } else if (key == "synth_hours") {
    synth_hours = to_double(key, value);
  } else if (key == "synth_report_period_s") {
    synth_report_period_s = to_int<std::int64_t>(key, value);
  } else if (key == "synth_reception_p") {
    synth_reception_p = to_double(key, value);
  } else if (key == "synth_cruise_speed_kn") {
    synth_cruise_speed_kn = to_double(key, value);
  } else {
    throw ConfigError("unknown configuration key `" + key + "`");
  }
}

void RunConfig::apply_file(std::istream& in) {
  if (!in) throw ConfigError("unreadable configuration stream");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_assignment(std::string(trim(body.substr(0, eq))),
                     std::string(trim(body.substr(eq + 1))));
  }
}

const char* to_string(AmbiguousPolicy p) {
  return p == AmbiguousPolicy::include ? "include" : "exclude";
}

}  // namespace fishmap
