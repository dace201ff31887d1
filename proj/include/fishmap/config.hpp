// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "fishmap/classify.hpp"
#include "fishmap/coverage.hpp"
#include "fishmap/grid.hpp"
#include "fishmap/mixture.hpp"
#include "fishmap/tracks.hpp"
#include "fishmap/types.hpp"

namespace fishmap {

inline constexpr const char* kToolVersion = "fishmap 0.1.0";

/// Every tunable of the pipeline. Serialized verbatim into output headers
/// so a map always declares the configuration that produced it.
struct RunConfig {
  // tracks
  std::int64_t window_s = 300;
  // false swaps the stage order: fit and classify the raw track, then thin
  // the fishing points to the lattice
  bool decimate_before_fit = true;

  // mixture
  EmConfig em;

  // classify
  double k = 2.0;
  AmbiguousPolicy ambiguous_policy = AmbiguousPolicy::include;
  bool band_applies_to_filtered = false;

  // grid
  GridSpec grid;

  // coverage
  double cruise_min = 8.0;
  std::int64_t max_gap_s = 21600;

  // ingest
  Strictness strictness = Strictness::lenient;

  // execution
  unsigned threads = 1;

  // synth scenario
  std::uint64_t synth_seed = 0;
  std::size_t synth_fishing_vessels = 10;
  std::size_t synth_cruisers = 0;
  double synth_hours = 48.0;
  std::int64_t synth_report_period_s = 60;
  double synth_reception_p = 1.0;
  double synth_cruise_speed_kn = 12.0;

  double quantum_minutes() const { return static_cast<double>(window_s) / 60.0; }
  DecimationConfig decimation() const { return DecimationConfig{window_s, 0}; }
  CoverageConfig coverage() const { return CoverageConfig{cruise_min, max_gap_s, decimation()}; }

  /// Throws ConfigError when any invariant fails.
  void validate() const;

  /// Canonical key=value view of every tunable, key-sorted. Paths are not
  /// part of the configuration identity.
  std::vector<std::pair<std::string, std::string>> canonical_items() const;

  /// FNV-1a over the canonical serialization, as 16 hex digits.
  std::string config_hash() const;

  /// '#'-prefixed header lines stamped into every text output.
  std::vector<std::string> output_header_lines() const;

  /// Apply `key=value` assignments from a plain-text config file.
  /// Unknown keys or unparsable values throw ConfigError.
  void apply_file(std::istream& in);
  void apply_assignment(const std::string& key, const std::string& value);
};

const char* to_string(AmbiguousPolicy p);

}  // namespace fishmap
