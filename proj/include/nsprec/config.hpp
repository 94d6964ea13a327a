// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "nsprec/errors.hpp"

namespace nsprec {

/// How the transmit power constraint tr(W W^H) = 1 is enforced.
///
/// PerRealization rescales every draw individually (standard simulation
/// practice). Statistical enforces the constraint only in expectation over
/// a trial batch, which is what the closed-form rate analysis assumes.
enum class NormMode { PerRealization, Statistical };

/// Downlink system dimensions and operating point.
///
/// M base-station antennas serve K single-antenna users over a correlated
/// Rayleigh channel whose covariance has rank c*M (c = 1 means i.i.d.).
/// rho_t is the linear transmit SNR.
struct SystemConfig {
  int M = 0;
  int K = 0;
  double c = 1.0;
  double rho_t = 1.0;
  NormMode norm_mode = NormMode::PerRealization;

  /// When set, the channel direction matrix is drawn once from this seed
  /// and held fixed across trials instead of being redrawn per
  /// realization. Results are invariant in distribution either way; the
  /// fixed mode skips one tall QR factorization per trial.
  std::optional<std::uint64_t> fixed_a_seed{};

  /// Effective channel dimension c*M, as an integer.
  int effective_dim() const;

  /// Loading factor r = K/M.
  double loading() const { return static_cast<double>(K) / M; }
};

/// Validates dimensions and ranges; returns cfg unchanged on success.
///
/// Throws NonIntegerEffectiveDimension if c*M is not an integer,
/// OverloadedSystem if K > c*M, BadRange for c outside (0,1], rho_t <= 0,
/// or M < K, K < 1.
SystemConfig validate_config(const SystemConfig& cfg);

}  // namespace nsprec
