// SPDX-License-Identifier: Apache-2.0
#include "nsprec/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nsprec/precondition.hpp"
#include "nsprec/rng.hpp"

namespace nsprec::crosscheck {

// Second transcription in the scale-free variables x = K/(cM), u = 1/omega.
// Written independently of analysis.cpp; do not "fix" one to match the
// other without re-deriving the disputed term.

InsCoefficients ins_coefficients_alt(double M, double K, double c,
                                     double omega) {
  const double cM = c * M;
  const double x = K / cM;
  const double u = 1.0 / omega;
  const double one_u = 1.0 - u;
  const double two_u = 2.0 - u;

  const double C1 = two_u * two_u + (4.0 / cM) * one_u * one_u -
                    2.0 * x * u * two_u + (x / cM) * u * (-4.0 + 5.0 * u) +
                    x * x * u * u + (x * x / cM) * u * u;
  const double C2 = two_u * two_u + x * u * (-4.0 + 3.0 * u) + x * x * u * u;
  const double C3 = (4.0 / cM) * one_u * one_u +
                    (x / cM) * u * (-4.0 + 5.0 * u) + (x * x / cM) * u * u;
  return {C1, C2, C3};
}

IcnsCoefficients icns_coefficients_alt(double M, double K, double c,
                                       double omega) {
  const double cM = c * M;
  const double x = K / cM;
  const double u = 1.0 / omega;
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
  const double one_u = 1.0 - u;
  const double two_u = 2.0 - u;

  const double base4 =
      two_u + 3.0 * x * u * (-1.0 + u) + x * x * u2 * one_u;
  const double C4 = base4 * base4;

  const double C5 =
      two_u * two_u + x * u * (-4.0 + 3.0 * u) + x * x * u2 +
      (2.0 * u / cM) * (-4.0 + 14.0 * u - 11.0 * u2 + 2.0 * u3) +
      (x * u2 / cM) * (16.0 - 44.0 * u + 27.0 * u2 - 4.0 * u3) +
      (x * x * u3 / cM) * (-4.0 + 13.0 * u - 8.0 * u2 + u3) +
      (x * x * x * u4 / cM) * one_u * one_u;

  const double C6 = 4.0 * x * one_u * one_u -
                    x * x * u * (4.0 * one_u * one_u - u) +
                    x * x * x * u2 * one_u * one_u;

  const double C7 = two_u * two_u - 2.0 * x * u * two_u + x * x * u2 +
                    (2.0 / cM) * (2.0 - 4.0 * u + 4.0 * u2 - u3) +
                    (x * u / cM) * (-4.0 + 9.0 * u - 4.0 * u2) +
                    (x * x * u2 / cM) * (1.0 - 2.0 * u);

  const double C8 =
      4.0 * x * one_u * one_u + x * x * u * (-4.0 + 5.0 * u) +
      x * x * x * u2 +
      (1.0 / cM) * (4.0 * u2 * (u - 2.0) * (u - 2.0) - 4.0) +
      (x * u / cM) * (-4.0 + 51.0 * u - 84.0 * u2 + 38.0 * u3 - 4.0 * u4) +
      (x * x * u2 / cM) *
          (15.0 - 66.0 * u + 65.0 * u2 - 20.0 * u3 + u4) +
      (x * x * x * u3 / cM) * (-8.0 + 21.0 * u - 16.0 * u2 + 3.0 * u3) +
      (x * x * x * x * u4 / cM) * one_u * one_u;

  return {C4, C5, C6, C7, C8};
}

double max_dualcode_discrepancy(int points, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const double c = 0.1 + 0.9 * unif(gen);
    const int M = 20 + static_cast<int>(1980 * unif(gen));
    const double cm = c * M;
    const int K = 1 + static_cast<int>(unif(gen) * std::max(1.0, cm - 1.0));
    const double w = 1.0 + 2.0 * unif(gen);

    const auto a = ins_coefficients(M, K, c, w);
    const auto b = ins_coefficients_alt(M, K, c, w);
    worst = std::max({worst, std::abs(a.C1 - b.C1), std::abs(a.C2 - b.C2),
                      std::abs(a.C3 - b.C3)});
    const auto p1 = icns_coefficients(M, K, c, w);
    const auto p2 = icns_coefficients_alt(M, K, c, w);
    worst = std::max({worst, std::abs(p1.C4 - p2.C4), std::abs(p1.C5 - p2.C5),
                      std::abs(p1.C6 - p2.C6), std::abs(p1.C7 - p2.C7),
                      std::abs(p1.C8 - p2.C8)});
  }
  return worst;
}

double max_inverse_residual(int K, int draws, std::uint64_t seed) {
  double worst = 0.0;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(K, K);
  for (int d = 0; d < draws; ++d) {
    std::mt19937_64 gen(trial_seed(seed, d));
    // Hermitian PSD Gram with a healthy diagonal.
    const Eigen::MatrixXcd X = complex_gaussian(4 * K, K, gen);
    Eigen::MatrixXcd G = (X.adjoint() * X) / (4.0 * K);
    G = 0.5 * (G + G.adjoint()).eval();

    const double w = omega_star(4 * K, K, 1.0);
    for (const PreconditionKind& kind :
         {PreconditionKind::ins(w), PreconditionKind::dns(),
          PreconditionKind::tns(), PreconditionKind::cns(),
          PreconditionKind::icns(w), PreconditionKind::ordered_icns(w)}) {
      const PreconditionMatrix pm = build_precondition(kind, G);
      worst = std::max(worst, (pm.D * pm.D_inv - I).norm());
    }
  }
  return worst;
}

}  // namespace nsprec::crosscheck
