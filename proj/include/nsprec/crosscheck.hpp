// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "nsprec/analysis.hpp"

namespace nsprec::crosscheck {

/// Independent second transcriptions of the closed-form SINR
/// coefficients, written as polynomials in x = K/(cM) and u = 1/omega
/// rather than the grouped form used by the analysis module. They must
/// agree with the primary implementations to 1e-12; a disagreement means
/// one of the two transcriptions is wrong.
InsCoefficients ins_coefficients_alt(double M, double K, double c,
                                     double omega);
IcnsCoefficients icns_coefficients_alt(double M, double K, double c,
                                       double omega);

/// Largest absolute coefficient discrepancy between the two
/// transcriptions over `points` random (M, K, c, omega) tuples.
double max_dualcode_discrepancy(int points, std::uint64_t seed);

/// Largest ||D D^{-1} - I||_F over `draws` random Hermitian-PSD Gram
/// matrices of size K, across every precondition family.
double max_inverse_residual(int K, int draws, std::uint64_t seed);

}  // namespace nsprec::crosscheck
