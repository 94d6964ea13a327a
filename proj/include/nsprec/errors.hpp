// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nsprec {

/// Base class for configuration rejections (exit code 1 territory).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// c*M is not an integer, so the effective channel dimension is undefined.
struct NonIntegerEffectiveDimension : ConfigError {
  using ConfigError::ConfigError;
};

/// K exceeds the maximum multiplexing gain c*M.
struct OverloadedSystem : ConfigError {
  using ConfigError::ConfigError;
};

/// A scalar parameter is outside its admissible range.
struct BadRange : ConfigError {
  using ConfigError::ConfigError;
};

/// A diagonal/pivot entry of a precondition matrix is numerically zero.
struct SingularPrecondition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gram matrix factorization failed (zero-forcing only).
struct SingularGram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ideal zero-forcing is undefined (cM <= K, Wishart trace diverges).
struct DegenerateZF : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nsprec
