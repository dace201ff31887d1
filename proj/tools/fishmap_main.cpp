// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the fishing-activity mapping pipeline.
//
//   fishmap synth     generate a labeled synthetic AIS scenario
//   fishmap classify  fit per-vessel speed mixtures and emit fishing points
//   fishmap grid      aggregate fishing points into the 1 km density raster
//   fishmap coverage  build the reception-coverage raster from raw AIS
//   fishmap run       classify + grid + coverage + reliability join
//
// Exit codes: 0 success, 2 configuration or usage error, 3 input data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fishmap/config.hpp"
#include "fishmap/errors.hpp"
#include "fishmap/pipeline.hpp"
#include "fishmap/raster_io.hpp"

namespace {

using namespace fishmap;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file `" + path + "`");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file `" + path + "`");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw InputError("failed writing output file `" + path + "`");
}

// The .asc payload is pure ESRI ASCII so GIS readers accept it directly;
// the run configuration that produced it goes to a sidecar.
void write_meta_sidecar(const std::string& path, const RunConfig& config) {
  const std::string meta_path = path + ".meta";
  std::ofstream out = open_output(meta_path);
  for (const auto& line : config.output_header_lines()) out << "# " << line << '\n';
  finish_output(out, meta_path);
}

// Deferred key=value assignments; applied config-file first, then in a
// fixed documented order so reruns of the same command line are identical.
struct Assignments {
  std::optional<std::string> config_path;
  std::vector<std::pair<std::string, std::string>> sets;  // --set key=value
  std::vector<std::pair<std::string, std::string>> flags; // ergonomic aliases

  RunConfig resolve() const {
    RunConfig config;
    if (config_path) {
      std::ifstream in(*config_path, std::ios::binary);
      if (!in) throw ConfigError("cannot open config file `" + *config_path + "`");
      config.apply_file(in);
    }
    for (const auto& [key, value] : sets) config.apply_assignment(key, value);
    for (const auto& [key, value] : flags) config.apply_assignment(key, value);
    config.validate();
    return config;
  }
};

void add_common_options(CLI::App& app, Assignments& a) {
  app.add_option_function<std::string>(
         "--config", [&a](const std::string& v) { a.config_path = v; },
         "key=value configuration file applied before any flags");
  app.add_option_function<std::string>(
      "--set",
      [&a](const std::string& v) {
        const auto eq = v.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value");
        a.sets.emplace_back(v.substr(0, eq), v.substr(eq + 1));
      },
      "set any configuration key (repeatable), e.g. --set em.max_iter=200");

  // ergonomic aliases for the keys that change most often; raw string
  // values flow into the same parser as --set so behavior cannot drift
  auto alias = [&app, &a](const std::string& flag, const std::string& key,
                          const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&a, key](const std::string& v) { a.flags.emplace_back(key, v); }, help);
  };
  alias("--window-s", "window_s", "decimation window in seconds");
  alias("--k", "k", "band half-width in standard deviations");
  alias("--min-speed", "em.min_speed", "fit-time speed floor, knots");
  alias("--min-samples", "em.min_samples", "minimum speed samples per vessel");
  alias("--restarts", "em.n_restarts", "EM restarts per vessel");
  alias("--em-seed", "em.seed", "base seed for EM restarts");
  alias("--ambiguous-policy", "ambiguous_policy", "include|exclude ambiguous fits");
  alias("--cruise-min", "cruise_min", "cruising speed threshold, knots");
  alias("--max-gap-s", "max_gap_s", "segment split gap, seconds");
  alias("--cell-size", "grid.cell_size", "grid cell size, meters");
  alias("--threads", "threads", "worker threads (results are thread-count independent)");
  alias("--synth-seed", "synth_seed", "scenario seed");
  alias("--vessels", "synth_fishing_vessels", "synthetic fishing vessel count");
  alias("--cruisers", "synth_cruisers", "synthetic cruiser count");
  alias("--hours", "synth_hours", "scenario duration in hours");
  alias("--period-s", "synth_report_period_s", "synthetic report period, seconds");
  alias("--reception", "synth_reception_p", "per-message reception probability");
  alias("--cruise-speed", "synth_cruise_speed_kn", "cruiser speed, knots");
  app.add_flag_function(
      "--strict",
      [&a](std::int64_t) { a.flags.emplace_back("strictness", "strict"); },
      "abort on the first malformed input row instead of skipping it");
}

struct IoPaths {
  std::string ais;
  std::string reg;
  std::string pairs;
  std::string points;
  std::string out_points;
  std::string out_diagnostics;
  std::string out_asc;
  std::string out_csv;
  std::string out_geojson;
  std::string out_dir;
  std::string out_ais;
  std::string out_labels;
  std::string out_register;
  bool exclude_ambiguous = false;
};

ParsedAis load_ais(const std::string& path, const RunConfig& config) {
  std::ifstream in = open_input(path);
  return parse_ais_csv(in, config.strictness);
}

std::vector<FleetRegisterRecord> load_register_opt(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in = open_input(path);
  return load_fleet_register(in);
}

StaticPairs load_pairs_opt(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in = open_input(path);
  return load_static_pairs(in);
}

std::map<Mmsi, bool> ambiguous_by_vessel(const FishingIdentification& identification) {
  std::map<Mmsi, bool> flags;
  for (const auto& s : identification.summaries) flags[s.mmsi] = s.ambiguous;
  return flags;
}

void report_ingest(const IngestReport& report) {
  std::cerr << "ingest: " << report.rows_read << " rows, " << report.rows_accepted
            << " accepted, " << report.rows_rejected << " rejected\n";
  for (const auto& [reason, n] : report.rejection_histogram) {
    std::cerr << "  rejected " << reason << ": " << n << '\n';
  }
}

int cmd_synth(const IoPaths& io, const RunConfig& config) {
  const SynthScenario scenario = gen_scenario(config);
  const auto headers = config.output_header_lines();

  std::ofstream out = open_output(io.out_ais);
  write_ais_csv(out, scenario.messages, headers);
  finish_output(out, io.out_ais);
  if (!io.out_labels.empty()) {
    std::ofstream labels = open_output(io.out_labels);
    write_labels_csv(labels, scenario.fishing, headers);
    finish_output(labels, io.out_labels);
  }
  if (!io.out_register.empty()) {
    std::ofstream reg = open_output(io.out_register);
    write_register_csv(reg, scenario.fishing_mmsis);
    finish_output(reg, io.out_register);
  }
  std::cerr << "synth: " << scenario.messages.size() << " messages from "
            << scenario.fishing.size() << " fishing vessels, " << scenario.cruisers.size()
            << " cruisers\n";
  return kExitOk;
}

int cmd_classify(const IoPaths& io, const RunConfig& config) {
  ParsedAis parsed = load_ais(io.ais, config);
  report_ingest(parsed.report);
  ClassifyOutput out = classify_pipeline(std::move(parsed.messages),
                                         load_register_opt(io.reg), load_pairs_opt(io.pairs),
                                         config);
  const auto headers = config.output_header_lines();

  std::ofstream points = open_output(io.out_points);
  write_fishing_points_csv(points, out.identification.points,
                           ambiguous_by_vessel(out.identification), headers);
  finish_output(points, io.out_points);
  if (!io.out_diagnostics.empty()) {
    std::ofstream diag = open_output(io.out_diagnostics);
    write_diagnostics_csv(diag, out.fits, headers);
    finish_output(diag, io.out_diagnostics);
  }
  std::cerr << "classify: " << out.identification.points.size() << " fishing points from "
            << out.identification.vessels_classified << " vessels ("
            << out.identification.vessels_skipped << " skipped, "
            << out.identification.vessels_excluded_ambiguous << " ambiguous excluded)\n";
  return kExitOk;
}

int cmd_grid(const IoPaths& io, const RunConfig& config) {
  std::ifstream in = open_input(io.points);
  std::vector<FishingPointRow> rows = read_fishing_points_csv(in);
  std::vector<FishingPoint> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    if (io.exclude_ambiguous && row.ambiguous) continue;
    points.push_back(row.point);
  }
  const DensityRaster raster =
      aggregate(points, config.grid, config.quantum_minutes(), config.strictness);
  const auto headers = config.output_header_lines();

  if (!io.out_asc.empty()) {
    std::ofstream out = open_output(io.out_asc);
    write_esri_ascii(out, raster);
    finish_output(out, io.out_asc);
    write_meta_sidecar(io.out_asc, config);
  }
  if (!io.out_csv.empty()) {
    std::ofstream out = open_output(io.out_csv);
    write_density_cells_csv(out, raster, headers);
    finish_output(out, io.out_csv);
  }
  if (!io.out_geojson.empty()) {
    std::ofstream out = open_output(io.out_geojson);
    write_density_geojson(out, raster);
    finish_output(out, io.out_geojson);
    write_meta_sidecar(io.out_geojson, config);
  }
  std::cerr << "grid: " << raster.total << " points in " << raster.cells.size() << " cells, "
            << raster.skipped << " unprojectable skipped\n";
  return kExitOk;
}

int cmd_coverage(const IoPaths& io, const RunConfig& config) {
  ParsedAis parsed = load_ais(io.ais, config);
  report_ingest(parsed.report);
  const CoverageRaster raster = coverage_pipeline(std::move(parsed.messages), config);
  const auto headers = config.output_header_lines();

  if (!io.out_asc.empty()) {
    std::ofstream out = open_output(io.out_asc);
    write_esri_ascii(out, raster);
    finish_output(out, io.out_asc);
    write_meta_sidecar(io.out_asc, config);
  }
  if (!io.out_csv.empty()) {
    std::ofstream out = open_output(io.out_csv);
    write_coverage_cells_csv(out, raster, headers);
    finish_output(out, io.out_csv);
  }
  if (!io.out_geojson.empty()) {
    std::ofstream out = open_output(io.out_geojson);
    write_coverage_geojson(out, raster);
    finish_output(out, io.out_geojson);
    write_meta_sidecar(io.out_geojson, config);
  }
  std::cerr << "coverage: " << raster.expected.size() << " cells with expectation\n";
  return kExitOk;
}

int cmd_run(const IoPaths& io, const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(io.out_dir);
  const auto path = [&](const char* name) { return (fs::path(io.out_dir) / name).string(); };

  ParsedAis parsed = load_ais(io.ais, config);
  report_ingest(parsed.report);

  // coverage consumes every received message: reception quality is a
  // property of the receiver network, not of the fishing fleet subset
  const std::vector<AisMessage> all_messages = parsed.messages;

  ClassifyOutput classified = classify_pipeline(std::move(parsed.messages),
                                                load_register_opt(io.reg),
                                                load_pairs_opt(io.pairs), config);
  const DensityRaster density = aggregate(classified.identification.points, config.grid,
                                          config.quantum_minutes(), config.strictness);
  const CoverageRaster coverage = coverage_pipeline(all_messages, config);
  const std::vector<ReliabilityRow> reliability = reliability_join(density, coverage);
  const auto headers = config.output_header_lines();

  {
    std::ofstream out = open_output(path("fishing_points.csv"));
    write_fishing_points_csv(out, classified.identification.points,
                             ambiguous_by_vessel(classified.identification), headers);
    finish_output(out, path("fishing_points.csv"));
  }
  {
    std::ofstream out = open_output(path("diagnostics.csv"));
    write_diagnostics_csv(out, classified.fits, headers);
    finish_output(out, path("diagnostics.csv"));
  }
  {
    std::ofstream out = open_output(path("density.asc"));
    write_esri_ascii(out, density);
    finish_output(out, path("density.asc"));
    write_meta_sidecar(path("density.asc"), config);
  }
  {
    std::ofstream out = open_output(path("density_cells.csv"));
    write_density_cells_csv(out, density, headers);
    finish_output(out, path("density_cells.csv"));
  }
  {
    std::ofstream out = open_output(path("density.geojson"));
    write_density_geojson(out, density);
    finish_output(out, path("density.geojson"));
    write_meta_sidecar(path("density.geojson"), config);
  }
  {
    std::ofstream out = open_output(path("coverage.asc"));
    write_esri_ascii(out, coverage);
    finish_output(out, path("coverage.asc"));
    write_meta_sidecar(path("coverage.asc"), config);
  }
  {
    std::ofstream out = open_output(path("coverage_cells.csv"));
    write_coverage_cells_csv(out, coverage, headers);
    finish_output(out, path("coverage_cells.csv"));
  }
  {
    std::ofstream out = open_output(path("coverage.geojson"));
    write_coverage_geojson(out, coverage);
    finish_output(out, path("coverage.geojson"));
    write_meta_sidecar(path("coverage.geojson"), config);
  }
  {
    std::ofstream out = open_output(path("reliability.csv"));
    write_reliability_csv(out, reliability, headers);
    finish_output(out, path("reliability.csv"));
  }

  std::cerr << "run: " << classified.identification.points.size() << " fishing points, "
            << density.cells.size() << " density cells, " << coverage.expected.size()
            << " coverage cells -> " << io.out_dir << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fishing-activity and reception-coverage mapping from AIS data"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Assignments assignments;
  add_common_options(app, assignments);
  IoPaths io;

  CLI::App* synth = app.add_subcommand("synth", "generate a labeled synthetic AIS scenario");
  synth->fallthrough();
  synth->add_option("--out-ais", io.out_ais, "AIS CSV output path")->required();
  synth->add_option("--out-labels", io.out_labels, "ground-truth labels CSV path");
  synth->add_option("--out-register", io.out_register, "fleet register CSV path");

  CLI::App* classify = app.add_subcommand("classify", "identify fishing points per vessel");
  classify->fallthrough();
  classify->add_option("--ais", io.ais, "AIS CSV input path")->required();
  classify->add_option("--register", io.reg, "fleet register CSV path");
  classify->add_option("--pairs", io.pairs, "mmsi/call-sign pairs CSV path");
  classify->add_option("--out-points", io.out_points, "fishing points CSV output")->required();
  classify->add_option("--out-diagnostics", io.out_diagnostics, "per-vessel fit CSV output");

  CLI::App* grid = app.add_subcommand("grid", "aggregate fishing points into the raster");
  grid->fallthrough();
  grid->add_option("--points", io.points, "fishing points CSV input")->required();
  grid->add_option("--out-asc", io.out_asc, "ESRI ASCII raster output");
  grid->add_option("--out-csv", io.out_csv, "sparse cells CSV output");
  grid->add_option("--out-geojson", io.out_geojson, "cell polygons GeoJSON output");
  grid->add_flag("--exclude-ambiguous", io.exclude_ambiguous,
                 "drop points from vessels flagged ambiguous");

  CLI::App* coverage = app.add_subcommand("coverage", "build the reception-coverage raster");
  coverage->fallthrough();
  coverage->add_option("--ais", io.ais, "AIS CSV input path")->required();
  coverage->add_option("--out-asc", io.out_asc, "ESRI ASCII raster output");
  coverage->add_option("--out-csv", io.out_csv, "sparse cells CSV output");
  coverage->add_option("--out-geojson", io.out_geojson, "cell polygons GeoJSON output");

  CLI::App* run = app.add_subcommand("run", "full pipeline into an output directory");
  run->fallthrough();
  run->add_option("--ais", io.ais, "AIS CSV input path")->required();
  run->add_option("--register", io.reg, "fleet register CSV path");
  run->add_option("--pairs", io.pairs, "mmsi/call-sign pairs CSV path");
  run->add_option("--out-dir", io.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const RunConfig config = assignments.resolve();
    if (synth->parsed()) return cmd_synth(io, config);
    if (classify->parsed()) return cmd_classify(io, config);
    if (grid->parsed()) return cmd_grid(io, config);
    if (coverage->parsed()) return cmd_coverage(io, config);
    if (run->parsed()) return cmd_run(io, config);
    std::cerr << "error: no subcommand\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}
