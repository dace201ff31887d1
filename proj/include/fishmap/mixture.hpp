// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fishmap {

struct EmConfig {
  double min_speed = 0.5;      // knots; only samples strictly above enter the fit
  std::size_t min_samples = 50;
  std::size_t max_iter = 500;
  double rel_tol = 1e-8;       // relative log-likelihood change
  double var_floor = 1e-4;     // kn^2, applied in every M-step
  std::uint64_t seed = 0;      // for randomized restarts
  std::size_t n_restarts = 1;  // 1 = deterministic quantile init only
};

/// Fitted two-component univariate Gaussian mixture. Component 1 is the
/// lower-mean ("first") mode.
struct MixtureFit {
  double w1 = 0.5, w2 = 0.5;
  double mu1 = 0.0, mu2 = 0.0;
  double sigma1 = 0.0, sigma2 = 0.0;
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> loglik_trace;  // one entry per evaluated parameter set
};

/// Fit by expectation-maximisation over the samples strictly above
/// config.min_speed. Deterministic for a given (speeds, config).
/// Throws TooFewSamplesError or DegenerateSampleError; hitting max_iter is
/// not an error and is reported through converged=false.
MixtureFit fit_em(std::span<const double> speeds, const EmConfig& config = {});

/// Posterior component probabilities for one speed value; p1 + p2 = 1.
std::pair<double, double> responsibilities(const MixtureFit& fit, double speed);

struct SeparationDiagnostics {
  double separation = 0.0;  // (mu2 - mu1) / max(sigma1, sigma2)
  double min_weight = 0.0;
  bool ambiguous = false;   // separation < 2 or min_weight < 0.05
};

SeparationDiagnostics separation_diagnostics(const MixtureFit& fit);

/// Why a vessel produced no usable fit.
enum class FitSkip { none, too_few_samples, degenerate_sample };

struct VesselFitOutcome {
  std::optional<MixtureFit> fit;
  FitSkip skip = FitSkip::none;
  std::size_t n_samples = 0;  // samples above min_speed that entered the fit
};

/// Non-throwing wrapper used by the pipeline: skip reasons are recorded,
/// never thrown past a vessel.
VesselFitOutcome fit_vessel(std::span<const double> speeds, const EmConfig& config = {});

const char* to_string(FitSkip skip);

}  // namespace fishmap
