// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fishmap/classify.hpp"
#include "fishmap/geo.hpp"
#include "fishmap/tracks.hpp"

namespace fishmap {

/// Two-state speed behavior of a synthetic fishing vessel.
struct SynthVesselParams {
  Mmsi mmsi = 228000001;
  double mu_fish = 3.5;      // knots
  double sigma_fish = 0.7;
  double mu_steam = 10.0;
  double sigma_steam = 1.2;
  double p_stay = 0.95;      // per-step probability of keeping the state
  std::int64_t report_period_s = 60;
  double reception_p = 1.0;  // per-message Bernoulli reception probability
  double start_lat = 55.0;
  double start_lon = 4.0;
  std::int64_t start_time = 0;
  double heading_sigma_deg = 15.0;  // heading random-walk step
};

enum class ActivityState { fishing, steaming };

/// Synthetic track with ground-truth labels. `truth` holds every generated
/// report with one label per point; `received` is the subset surviving
/// reception dropout and is what the pipeline consumes.
struct LabeledTrack {
  VesselTrack truth;
  std::vector<ActivityState> labels;
  VesselTrack received;
};

/// Markov-switching speed process with a heading random walk; positions
/// advance along the sphere by the reported (0.1 kn quantized) speed.
/// Byte-identical output for a given (params, duration, seed).
LabeledTrack gen_fishing_vessel(const SynthVesselParams& params, std::int64_t duration_s,
                                std::uint64_t seed);

/// Constant-speed vessel following great-circle legs through `waypoints`,
/// reporting every `report_period_s` and dropping messages per reception_p.
VesselTrack gen_cruiser(Mmsi mmsi, std::span<const GeoPoint> waypoints, double speed_kn,
                        std::int64_t report_period_s, double reception_p, std::uint64_t seed,
                        std::int64_t start_time = 0);

struct ClassificationScore {
  double precision = 1.0;
  double recall = 1.0;
  std::uint64_t tp = 0, fp = 0, fn = 0;
  bool zero_support = false;  // empty denominator reported as 1 by convention
};

/// Point-level precision/recall of predicted fishing points against the
/// generator's labels. The evaluation universe defaults to the full truth
/// tracks; pass the (decimated) tracks the classifier actually saw to score
/// a pipeline run. Throws PointNotInTruthError for unknown predictions.
ClassificationScore score_classification(std::span<const FishingPoint> predicted,
                                         const std::vector<LabeledTrack>& truth,
                                         const std::vector<VesselTrack>* universe = nullptr);

const char* to_string(ActivityState s);

}  // namespace fishmap
