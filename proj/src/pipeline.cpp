// SPDX-License-Identifier: Apache-2.0
#include "fishmap/pipeline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <thread>

#include "fishmap/errors.hpp"
#include "fishmap/timeutil.hpp"

namespace fishmap {

namespace {

constexpr std::uint64_t kSeedMix = 0x9e3779b97f4a7c15ull;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string fmt_mmsi(Mmsi mmsi) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%09u", mmsi);
  return buf;
}

void write_header_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << "# " << line << '\n';
}

// Vessel-specific restart seed so the fit of one vessel never depends on
// which worker thread picked it up or on the rest of the fleet.
EmConfig vessel_em_config(const EmConfig& base, Mmsi mmsi) {
  EmConfig c = base;
  c.seed = base.seed ^ (kSeedMix * (static_cast<std::uint64_t>(mmsi) + 1));
  return c;
}

// The alternative stage order (decimate_before_fit = false): the band was
// applied to the raw track, so the fishing points are thinned to the
// lattice here. A kept point then still stands for one window of activity.
void decimate_points(FishingIdentification& identification, const DecimationConfig& lattice) {
  auto& points = identification.points;  // sorted by (mmsi, timestamp)
  std::vector<FishingPoint> kept;
  kept.reserve(points.size());
  for (const auto& p : points) {
    if (!kept.empty() && kept.back().mmsi == p.mmsi &&
        lattice.window_index(kept.back().timestamp) == lattice.window_index(p.timestamp)) {
      continue;
    }
    kept.push_back(p);
  }
  points = std::move(kept);

  std::map<Mmsi, std::size_t> per_vessel;
  for (const auto& p : points) ++per_vessel[p.mmsi];
  for (auto& summary : identification.summaries) {
    const auto it = per_vessel.find(summary.mmsi);
    summary.n_fishing = it == per_vessel.end() ? 0 : it->second;
  }
}

}  // namespace

std::map<Mmsi, VesselFitOutcome> fit_fleet(const std::vector<VesselTrack>& tracks,
                                           const RunConfig& config) {
  const DecimationConfig lattice = config.decimation();
  std::vector<VesselFitOutcome> outcomes(tracks.size());

  auto fit_one = [&](std::size_t i) {
    const VesselTrack& track = tracks[i];
    std::vector<double> speeds;
    if (config.decimate_before_fit) {
      speeds = speed_profile(decimate(track, lattice));
    } else {
      speeds = speed_profile(track);
    }
    outcomes[i] = fit_vessel(speeds, vessel_em_config(config.em, track.mmsi));
  };

  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min<std::size_t>(config.threads, tracks.size()));
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < tracks.size(); ++i) fit_one(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < tracks.size(); i += n_workers) fit_one(i);
      });
    }
    for (auto& worker : workers) worker.join();
  }

  // merged in mmsi order regardless of which thread produced what
  std::map<Mmsi, VesselFitOutcome> fits;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    fits.emplace(tracks[i].mmsi, std::move(outcomes[i]));
  }
  return fits;
}

ClassifyOutput classify_pipeline(std::vector<AisMessage> messages,
                                 const std::vector<FleetRegisterRecord>& reg,
                                 const StaticPairs& static_pairs, const RunConfig& config) {
  ClassifyOutput out;
  if (!reg.empty()) {
    LinkResult linked = link_vessels(messages, reg, static_pairs);
    out.linked_vessels = linked.vessel_ids.size();
    out.dropped_messages = linked.messages_dropped;
    messages = std::move(linked.messages);
  }

  const std::vector<VesselTrack> tracks = build_tracks(std::move(messages));
  if (reg.empty()) out.linked_vessels = tracks.size();

  out.fits = fit_fleet(tracks, config);

  const DecimationConfig lattice = config.decimation();
  const std::optional<double> band_floor =
      config.band_applies_to_filtered ? std::optional<double>(config.em.min_speed)
                                      : std::nullopt;
  if (config.decimate_before_fit) {
    std::vector<VesselTrack> decimated;
    decimated.reserve(tracks.size());
    for (const auto& track : tracks) decimated.push_back(decimate(track, lattice));
    out.identification = identify_fishing(decimated, out.fits, config.k,
                                          config.ambiguous_policy, band_floor);
  } else {
    out.identification =
        identify_fishing(tracks, out.fits, config.k, config.ambiguous_policy, band_floor);
    decimate_points(out.identification, lattice);
  }
  return out;
}

CoverageRaster coverage_pipeline(std::vector<AisMessage> messages, const RunConfig& config) {
  const std::vector<VesselTrack> tracks = build_tracks(std::move(messages));
  std::vector<VesselTrack> decimated;
  decimated.reserve(tracks.size());
  const DecimationConfig lattice = config.decimation();
  for (const auto& track : tracks) decimated.push_back(decimate(track, lattice));
  return coverage_map(decimated, config.coverage(), config.grid);
}

// --- flat-file interfaces ---------------------------------------------------

void write_fishing_points_csv(std::ostream& out, std::span<const FishingPoint> points,
                              const std::map<Mmsi, bool>& ambiguous_by_vessel,
                              const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "mmsi,timestamp,lat,lon,sog,ambiguous\n";
  for (const auto& p : points) {
    const auto it = ambiguous_by_vessel.find(p.mmsi);
    const bool ambiguous = it != ambiguous_by_vessel.end() && it->second;
    out << fmt_mmsi(p.mmsi) << ',' << format_iso8601_utc(p.timestamp) << ','
        << fmt("%.6f", p.lat) << ',' << fmt("%.6f", p.lon) << ',' << fmt("%.2f", p.sog) << ','
        << (ambiguous ? '1' : '0') << '\n';
  }
}

std::vector<FishingPointRow> read_fishing_points_csv(std::istream& in) {
  if (!in) throw InputError("unreadable fishing-points stream");
  std::vector<FishingPointRow> rows;
  std::string line;
  std::uint64_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row{line};
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty() || row.front() == '#') continue;
    if (!saw_header) {
      if (row != "mmsi,timestamp,lat,lon,sog,ambiguous") {
        throw InputError("line " + std::to_string(line_no) +
                         ": expected header `mmsi,timestamp,lat,lon,sog,ambiguous`");
      }
      saw_header = true;
      continue;
    }

    std::array<std::string_view, 6> f;
    std::size_t field = 0, start = 0;
    bool ok = true;
    for (std::size_t i = 0; i <= row.size() && ok; ++i) {
      if (i == row.size() || row[i] == ',') {
        if (field >= 6) {
          ok = false;
          break;
        }
        f[field++] = row.substr(start, i - start);
        start = i + 1;
      }
    }
    ok = ok && field == 6;
    FishingPointRow r;
    auto parse_num = [&](std::string_view s, double& v) {
      const char* last = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(s.data(), last, v);
      return ec == std::errc{} && ptr == last;
    };
    std::uint64_t mmsi_raw = 0;
    if (ok) {
      const char* last = f[0].data() + f[0].size();
      auto [ptr, ec] = std::from_chars(f[0].data(), last, mmsi_raw);
      ok = ec == std::errc{} && ptr == last && mmsi_raw <= 999999999;
    }
    const auto ts = ok ? parse_iso8601_utc(f[1]) : std::nullopt;
    ok = ok && ts.has_value() && parse_num(f[2], r.point.lat) && parse_num(f[3], r.point.lon) &&
         parse_num(f[4], r.point.sog) && (f[5] == "0" || f[5] == "1");
    if (!ok) throw InputError("line " + std::to_string(line_no) + ": malformed row");
    r.point.mmsi = static_cast<Mmsi>(mmsi_raw);
    r.point.timestamp = *ts;
    r.ambiguous = f[5] == "1";
    rows.push_back(r);
  }
  if (!saw_header) throw InputError("missing fishing-points header");
  return rows;
}

void write_diagnostics_csv(std::ostream& out, const std::map<Mmsi, VesselFitOutcome>& fits,
                           const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "mmsi,w1,mu1,sigma1,w2,mu2,sigma2,loglik,iterations,converged,ambiguous,n_samples\n";
  for (const auto& [mmsi, outcome] : fits) {
    if (!outcome.fit) continue;
    const MixtureFit& fit = *outcome.fit;
    out << fmt_mmsi(mmsi) << ',' << fmt("%.6f", fit.w1) << ',' << fmt("%.6f", fit.mu1) << ','
        << fmt("%.6f", fit.sigma1) << ',' << fmt("%.6f", fit.w2) << ',' << fmt("%.6f", fit.mu2)
        << ',' << fmt("%.6f", fit.sigma2) << ',' << fmt("%.6f", fit.loglik) << ','
        << fit.iterations << ',' << (fit.converged ? '1' : '0') << ','
        << (separation_diagnostics(fit).ambiguous ? '1' : '0') << ',' << outcome.n_samples
        << '\n';
  }
}

void write_reliability_csv(std::ostream& out, std::span<const ReliabilityRow> rows,
                           const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "ix,iy,count,minutes,ratio,low_coverage,no_coverage_info\n";
  for (const auto& row : rows) {
    out << row.cell.ix << ',' << row.cell.iy << ',' << row.count << ','
        << fmt("%.4f", row.minutes) << ',' << (row.ratio ? fmt("%.4f", *row.ratio) : "") << ','
        << (row.low_coverage ? '1' : '0') << ',' << (row.no_coverage_info ? '1' : '0') << '\n';
  }
}

void write_ais_csv(std::ostream& out, std::span<const AisMessage> messages,
                   const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "mmsi,timestamp,lat,lon,sog,cog\n";
  for (const auto& m : messages) {
    out << fmt_mmsi(m.mmsi) << ',' << format_iso8601_utc(m.timestamp) << ','
        << fmt("%.6f", m.lat) << ',' << fmt("%.6f", m.lon) << ',' << fmt("%.2f", m.sog) << ',';
    if (m.cog) {
      // %.1f rounds courses just under 360 up to the excluded endpoint, so
      // wrap after rounding to stay inside [0, 360)
      double cog = std::round(*m.cog * 10.0) / 10.0;
      if (cog >= 360.0) cog = 0.0;
      out << fmt("%.1f", cog);
    }
    out << '\n';
  }
}

void write_labels_csv(std::ostream& out, const std::vector<LabeledTrack>& tracks,
                      const std::vector<std::string>& header_lines) {
  write_header_lines(out, header_lines);
  out << "mmsi,timestamp,state\n";
  for (const auto& track : tracks) {
    for (std::size_t i = 0; i < track.truth.points.size(); ++i) {
      out << fmt_mmsi(track.truth.mmsi) << ','
          << format_iso8601_utc(track.truth.points[i].timestamp) << ','
          << to_string(track.labels[i]) << '\n';
    }
  }
}

void write_register_csv(std::ostream& out, std::span<const Mmsi> mmsis) {
  out << "cfr,call_sign,mmsi,loa,gear_main,flag\n";
  for (Mmsi mmsi : mmsis) {
    out << "SYN" << fmt_mmsi(mmsi) << ",," << fmt_mmsi(mmsi) << ",24.0,OTB,ZZ\n";
  }
}

SynthScenario gen_scenario(const RunConfig& config) {
  SynthScenario scenario;
  const auto duration_s = static_cast<std::int64_t>(std::llround(config.synth_hours * 3600.0));

  for (std::size_t i = 0; i < config.synth_fishing_vessels; ++i) {
    SynthVesselParams params;
    params.mmsi = static_cast<Mmsi>(228000001 + i);
    // spread the fleet so vessels do not all start in one grid cell
    params.start_lat = 55.0 + 0.08 * static_cast<double>(i % 8);
    params.start_lon = 4.0 + 0.25 * static_cast<double>(i / 8);
    params.report_period_s = config.synth_report_period_s;
    params.reception_p = config.synth_reception_p;
    const std::uint64_t seed = config.synth_seed ^ (kSeedMix * (i + 1));
    scenario.fishing.push_back(gen_fishing_vessel(params, duration_s, seed));
    scenario.fishing_mmsis.push_back(params.mmsi);
  }

  if (config.synth_cruisers > 0) {
    // shared shuttle route, long enough to span the whole run
    const GeoPoint a{54.5, 2.8};
    const GeoPoint b{54.5, 3.2};
    const double leg_m = central_angle(a, b) * kAuthalicRadiusM;
    const double total_m =
        config.synth_cruise_speed_kn * kKnotsToMps * static_cast<double>(duration_s);
    const auto n_legs = static_cast<std::size_t>(total_m / leg_m) + 2;
    std::vector<GeoPoint> waypoints;
    waypoints.reserve(n_legs + 1);
    for (std::size_t leg = 0; leg <= n_legs; ++leg) {
      waypoints.push_back(leg % 2 == 0 ? a : b);
    }
    for (std::size_t j = 0; j < config.synth_cruisers; ++j) {
      const std::uint64_t seed =
          (config.synth_seed + 0x5851f42d4c957f2dull) ^ (kSeedMix * (j + 1));
      scenario.cruisers.push_back(gen_cruiser(static_cast<Mmsi>(244000001 + j), waypoints,
                                              config.synth_cruise_speed_kn,
                                              config.synth_report_period_s,
                                              config.synth_reception_p, seed));
    }
  }

  for (const auto& lt : scenario.fishing) {
    scenario.messages.insert(scenario.messages.end(), lt.received.points.begin(),
                             lt.received.points.end());
  }
  for (const auto& cruiser : scenario.cruisers) {
    scenario.messages.insert(scenario.messages.end(), cruiser.points.begin(),
                             cruiser.points.end());
  }
  std::sort(scenario.messages.begin(), scenario.messages.end(),
            [](const AisMessage& x, const AisMessage& y) {
              if (x.mmsi != y.mmsi) return x.mmsi < y.mmsi;
              return x.timestamp < y.timestamp;
            });
  return scenario;
}

}  // namespace fishmap
