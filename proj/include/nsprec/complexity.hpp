// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsprec/precondition.hpp"

namespace nsprec {

/// Leading-order operation counts for forming D^{-1} - D^{-1} E D^{-1}
/// (the per-coherence-block work that differs between schemes; the common
/// H x (.) product is excluded).
struct ComplexityReport {
  PreconditionTag scheme;
  long long mults = 0;
  long long divs = 0;
  /// True for counts not taken from the reference accounting (DNS only,
  /// derived here by the same method).
  bool extrapolated = false;
};

/// K >= 2 required.
///   INS (K^2, 0)   CNS (4K^2, K)   TNS (6K^2, K)
///   ICNS (4K^2, 0) OrderedICNS (5K^2, 0)   DNS (K^2, K) [extrapolated]
ComplexityReport op_counts(PreconditionTag scheme, long long K);

}  // namespace nsprec
