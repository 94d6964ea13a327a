// SPDX-License-Identifier: Apache-2.0
#include "nsprec/config.hpp"

#include <cmath>
#include <string>

namespace nsprec {

int SystemConfig::effective_dim() const {
  const double cm = c * M;
  const double rounded = std::round(cm);
  if (std::abs(cm - rounded) > 1e-9 * std::max(1.0, std::abs(cm))) {
    throw NonIntegerEffectiveDimension(
        "c*M = " + std::to_string(cm) + " is not an integer (M=" +
        std::to_string(M) + ", c=" + std::to_string(c) + ")");
  }
  return static_cast<int>(rounded);
}

SystemConfig validate_config(const SystemConfig& cfg) {
  if (cfg.c <= 0.0 || cfg.c > 1.0) {
    throw BadRange("correlation level c must be in (0,1], got " +
                   std::to_string(cfg.c));
  }
  if (cfg.rho_t <= 0.0) {
    throw BadRange("transmit SNR rho_t must be positive, got " +
                   std::to_string(cfg.rho_t));
  }
  if (cfg.K < 1 || cfg.M < cfg.K) {
    throw BadRange("need M >= K >= 1, got M=" + std::to_string(cfg.M) +
                   ", K=" + std::to_string(cfg.K));
  }
  const int cm = cfg.effective_dim();  // throws NonIntegerEffectiveDimension
  if (cfg.K > cm) {
    throw OverloadedSystem("K=" + std::to_string(cfg.K) +
                           " exceeds the multiplexing gain c*M=" +
                           std::to_string(cm));
  }
  return cfg;
}

}  // namespace nsprec
