// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fishmap {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input data (CSV rows, headers, missing files).
struct InputError : Error {
  using Error::Error;
};

/// Invalid or inconsistent run configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// Fewer usable speed samples than EmConfig::min_samples.
struct TooFewSamplesError : Error {
  using Error::Error;
};

/// Speed sample has no spread; a two-component mixture is undefined.
struct DegenerateSampleError : Error {
  using Error::Error;
};

/// Point is antipodal to the projection center.
struct AntipodalPointError : Error {
  using Error::Error;
};

/// Rasters do not share the same grid specification.
struct GridSpecMismatchError : Error {
  using Error::Error;
};

/// A predicted point has no counterpart in the labeled ground truth.
struct PointNotInTruthError : Error {
  using Error::Error;
};

}  // namespace fishmap
