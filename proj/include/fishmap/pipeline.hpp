// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "fishmap/config.hpp"
#include "fishmap/coverage.hpp"
#include "fishmap/grid.hpp"
#include "fishmap/ingest.hpp"
#include "fishmap/synth.hpp"

namespace fishmap {

struct ClassifyOutput {
  FishingIdentification identification;
  std::map<Mmsi, VesselFitOutcome> fits;
  IngestReport ingest_report;
  std::uint64_t linked_vessels = 0;
  std::uint64_t dropped_messages = 0;
};

/// ingest -> tracks -> mixture -> classify. Worker threads split by vessel;
/// outputs are merged in mmsi order so the result is independent of the
/// thread count.
ClassifyOutput classify_pipeline(std::vector<AisMessage> messages,
                                 const std::vector<FleetRegisterRecord>& reg,
                                 const StaticPairs& static_pairs, const RunConfig& config);

/// Per-vessel mixture fits over (optionally decimated) speed profiles.
std::map<Mmsi, VesselFitOutcome> fit_fleet(const std::vector<VesselTrack>& tracks,
                                           const RunConfig& config);

/// Coverage from the unrestricted message stream.
CoverageRaster coverage_pipeline(std::vector<AisMessage> messages, const RunConfig& config);

// --- flat-file interfaces -------------------------------------------------

void write_fishing_points_csv(std::ostream& out, std::span<const FishingPoint> points,
                              const std::map<Mmsi, bool>& ambiguous_by_vessel,
                              const std::vector<std::string>& header_lines);

struct FishingPointRow {
  FishingPoint point;
  bool ambiguous = false;
};

/// Read back `mmsi,timestamp,lat,lon,sog,ambiguous` (skips '#' lines).
std::vector<FishingPointRow> read_fishing_points_csv(std::istream& in);

/// One row per fitted vessel:
/// mmsi,w1,mu1,sigma1,w2,mu2,sigma2,loglik,iterations,converged,ambiguous,n_samples
void write_diagnostics_csv(std::ostream& out, const std::map<Mmsi, VesselFitOutcome>& fits,
                           const std::vector<std::string>& header_lines);

void write_reliability_csv(std::ostream& out, std::span<const ReliabilityRow> rows,
                           const std::vector<std::string>& header_lines);

/// AIS CSV in the exact format `parse_ais_csv` reads.
void write_ais_csv(std::ostream& out, std::span<const AisMessage> messages,
                   const std::vector<std::string>& header_lines = {});

/// Ground-truth sidecar `mmsi,timestamp,state`.
void write_labels_csv(std::ostream& out, const std::vector<LabeledTrack>& tracks,
                      const std::vector<std::string>& header_lines = {});

/// Minimal fleet register covering the given vessels (synth export).
void write_register_csv(std::ostream& out, std::span<const Mmsi> mmsis);

/// The deterministic synthetic scenario behind `synth` and the acceptance
/// runs: a fishing fleet around the North Sea default position plus
/// optional cruisers shuttling a fixed route.
struct SynthScenario {
  std::vector<LabeledTrack> fishing;
  std::vector<VesselTrack> cruisers;
  std::vector<AisMessage> messages;  // merged received stream, (mmsi, t) sorted
  std::vector<Mmsi> fishing_mmsis;
};

SynthScenario gen_scenario(const RunConfig& config);

}  // namespace fishmap
