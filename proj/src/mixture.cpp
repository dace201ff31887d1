// SPDX-License-Identifier: Apache-2.0
#include "fishmap/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fishmap/errors.hpp"

namespace fishmap {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112353;
constexpr double kDeadComponentWeight = 1e-12;

struct Params {
  double w1, w2, mu1, mu2, sigma1, sigma2;
};

double log_sum_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double log_normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * (kLogTwoPi + z * z) - std::log(sigma);
}

// Sorted-sample quantile, nearest-rank with linear interpolation.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

struct EmRun {
  Params params;
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> loglik_trace;
};

// One full EM optimization from the given starting point. The variance
// floor is re-applied after every M-step, which keeps each step a valid
// ascent over the floored parameter space (generalized EM), so the trace
// stays non-decreasing.
EmRun run_em(const std::vector<double>& x, Params p, const EmConfig& config) {
  const std::size_t n = x.size();
  const double min_sigma = std::sqrt(config.var_floor);
  p.sigma1 = std::max(p.sigma1, min_sigma);
  p.sigma2 = std::max(p.sigma2, min_sigma);

  EmRun run;
  std::vector<double> r1(n);  // responsibility of component 1 per sample
  double prev_ll = 0.0;
  bool have_prev = false;

  for (std::size_t iter = 0;; ++iter) {
    // E-step in log space; also evaluates the current log-likelihood.
    const double lw1 = std::log(p.w1);
    const double lw2 = std::log(p.w2);
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = lw1 + log_normal_pdf(x[i], p.mu1, p.sigma1);
      const double b = lw2 + log_normal_pdf(x[i], p.mu2, p.sigma2);
      const double lse = log_sum_exp(a, b);
      ll += lse;
      r1[i] = std::exp(a - lse);
    }
    run.loglik_trace.push_back(ll);

    if (have_prev && std::abs(ll - prev_ll) <= config.rel_tol * std::max(1.0, std::abs(prev_ll))) {
      run.converged = true;
      break;
    }
    if (iter >= config.max_iter) break;
    prev_ll = ll;
    have_prev = true;

    // M-step with component-death guard: a starved component keeps its
    // location and a vanishing weight instead of producing NaNs.
    double n1 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      n1 += r1[i];
      s1 += r1[i] * x[i];
    }
    const double n2 = static_cast<double>(n) - n1;
    if (n1 < kDeadComponentWeight || n2 < kDeadComponentWeight) {
      const bool first_dead = n1 < kDeadComponentWeight;
      p.w1 = first_dead ? kDeadComponentWeight : 1.0 - kDeadComponentWeight;
      p.w2 = 1.0 - p.w1;
      run.iterations = iter + 1;
      continue;
    }
    const double mu1 = s1 / n1;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) s2 += (1.0 - r1[i]) * x[i];
    const double mu2 = s2 / n2;
    double v1 = 0.0, v2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = x[i] - mu1;
      const double d2 = x[i] - mu2;
      v1 += r1[i] * d1 * d1;
      v2 += (1.0 - r1[i]) * d2 * d2;
    }
    p.w1 = n1 / static_cast<double>(n);
    p.w2 = n2 / static_cast<double>(n);
    p.mu1 = mu1;
    p.mu2 = mu2;
    p.sigma1 = std::sqrt(std::max(v1 / n1, config.var_floor));
    p.sigma2 = std::sqrt(std::max(v2 / n2, config.var_floor));
    run.iterations = iter + 1;
  }

  run.params = p;
  run.loglik = run.loglik_trace.back();
  return run;
}

}  // namespace

MixtureFit fit_em(std::span<const double> speeds, const EmConfig& config) {
  std::vector<double> x;
  x.reserve(speeds.size());
  for (double v : speeds) {
    if (v > config.min_speed) x.push_back(v);
  }
  const std::size_t floor_n = std::max<std::size_t>(config.min_samples, 2);
  if (x.size() < floor_n) {
    throw TooFewSamplesError("need at least " + std::to_string(floor_n) +
                             " speed samples above " + std::to_string(config.min_speed) +
                             " kn, got " + std::to_string(x.size()));
  }

  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end());
  const double spread = sorted.back() - sorted.front();
  if (spread <= 0.0) {
    throw DegenerateSampleError("all " + std::to_string(x.size()) +
                                " speed samples equal " + std::to_string(sorted.front()) +
                                " kn; mixture undefined");
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double sd = std::sqrt(std::max(var, config.var_floor));

  // Deterministic start: component means at the sample quartiles. Heavy
  // ties can collapse the quartiles onto each other; spread the means by
  // one standard deviation in that case.
  Params init{0.5, 0.5, quantile(sorted, 0.25), quantile(sorted, 0.75), sd / 2.0, sd / 2.0};
  if (init.mu2 - init.mu1 < 1e-9) {
    init.mu1 = mean - sd;
    init.mu2 = mean + sd;
  }

  EmRun best = run_em(x, init, config);
  if (config.n_restarts > 1) {
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    for (std::size_t r = 1; r < config.n_restarts; ++r) {
      Params p{0.5, 0.5, x[pick(rng)], x[pick(rng)], sd / 2.0, sd / 2.0};
      if (p.mu1 > p.mu2) std::swap(p.mu1, p.mu2);
      if (p.mu2 - p.mu1 < 1e-9) {
        p.mu1 -= sd / 2.0;
        p.mu2 += sd / 2.0;
      }
      EmRun run = run_em(x, p, config);
      if (run.loglik > best.loglik) best = std::move(run);
    }
  }

  MixtureFit fit;
  Params p = best.params;
  if (p.mu1 > p.mu2) {  // component 1 is the lower-mean mode by definition
    std::swap(p.w1, p.w2);
    std::swap(p.mu1, p.mu2);
    std::swap(p.sigma1, p.sigma2);
  }
  fit.w1 = p.w1;
  fit.w2 = p.w2;
  fit.mu1 = p.mu1;
  fit.mu2 = p.mu2;
  fit.sigma1 = p.sigma1;
  fit.sigma2 = p.sigma2;
  fit.loglik = best.loglik;
  fit.iterations = best.iterations;
  fit.converged = best.converged;
  fit.loglik_trace = std::move(best.loglik_trace);
  return fit;
}

std::pair<double, double> responsibilities(const MixtureFit& fit, double speed) {
  const double a = std::log(fit.w1) + log_normal_pdf(speed, fit.mu1, fit.sigma1);
  const double b = std::log(fit.w2) + log_normal_pdf(speed, fit.mu2, fit.sigma2);
  const double lse = log_sum_exp(a, b);
  const double p1 = std::exp(a - lse);
  return {p1, 1.0 - p1};
}

SeparationDiagnostics separation_diagnostics(const MixtureFit& fit) {
  SeparationDiagnostics d;
  d.separation = (fit.mu2 - fit.mu1) / std::max(fit.sigma1, fit.sigma2);
  d.min_weight = std::min(fit.w1, fit.w2);
  d.ambiguous = d.separation < 2.0 || d.min_weight < 0.05;
  return d;
}

VesselFitOutcome fit_vessel(std::span<const double> speeds, const EmConfig& config) {
  VesselFitOutcome outcome;
  for (double v : speeds) {
    if (v > config.min_speed) ++outcome.n_samples;
  }
  try {
    outcome.fit = fit_em(speeds, config);
  } catch (const TooFewSamplesError&) {
    outcome.skip = FitSkip::too_few_samples;
  } catch (const DegenerateSampleError&) {
    outcome.skip = FitSkip::degenerate_sample;
  }
  return outcome;
}

const char* to_string(FitSkip skip) {
  switch (skip) {
    case FitSkip::none: return "none";
    case FitSkip::too_few_samples: return "too_few_samples";
    case FitSkip::degenerate_sample: return "degenerate_sample";
  }
  return "unknown";
}

}  // namespace fishmap
