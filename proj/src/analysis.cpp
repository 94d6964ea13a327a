// SPDX-License-Identifier: Apache-2.0
#include "nsprec/analysis.hpp"

#include <cmath>
#include <string>

namespace nsprec {

// The coefficient formulas below are evaluated in their original grouped
// form on purpose; an independently transcribed version lives in the
// crosscheck module and the two must agree to 1e-12.

InsCoefficients ins_coefficients(double M, double K, double c, double omega) {
  const double cM = c * M;
  const double w = omega;
  const double C1 =
      (2 - 1 / w) * (2 - 1 / w) + 4 / cM * (1 - 1 / w) * (1 - 1 / w) -
      2 * K / (cM * w) * (2 - 1 / w) + K / (cM * cM * w) * (-4 + 5 / w) +
      K * K / (cM * cM * w * w) + K * K / (cM * cM * cM * w * w);
  const double C2 = (2 - 1 / w) * (2 - 1 / w) +
                    K / (cM * w) * (-4 + 3 / w) + K * K / (cM * cM * w * w);
  const double C3 = 4 / cM * (1 - 1 / w) * (1 - 1 / w) +
                    K / (cM * cM * w) * (-4 + 5 / w) +
                    K * K / (cM * cM * cM * w * w);
  return {C1, C2, C3};
}

IcnsCoefficients icns_coefficients(double M, double K, double c,
                                   double omega) {
  const double cM = c * M;
  const double w = omega;
  const double cM2 = cM * cM, cM3 = cM2 * cM, cM4 = cM3 * cM, cM5 = cM4 * cM;
  const double w2 = w * w, w3 = w2 * w, w4 = w3 * w;

  const double c4_base = 2 - 1 / w + 3 * K / (cM * w) * (-1 + 1 / w) +
                         K * K / (cM2 * w2) * (1 - 1 / w);
  const double C4 = c4_base * c4_base;

  const double C5 =
      (2 - 1 / w) * (2 - 1 / w) + K / (cM * w) * (-4 + 3 / w) +
      K * K / (cM2 * w2) +
      2 / (cM * w) * (-4 + 14 / w - 11 / w2 + 2 / w3) +
      K / (cM2 * w2) * (16 - 44 / w + 27 / w2 - 4 / w3) +
      K * K / (cM3 * w3) * (-4 + 13 / w - 8 / w2 + 1 / w3) +
      K * K * K / (cM4 * w4) * (1 - 1 / w) * (1 - 1 / w);

  const double C6 = 4 * K / cM * (1 - 1 / w) * (1 - 1 / w) -
                    K * K / (cM2 * w) *
                        (4 * (1 - 1 / w) * (1 - 1 / w) - 1 / w) +
                    K * K * K / (cM3 * w2) * (1 - 1 / w) * (1 - 1 / w);

  const double C7 =
      (2 - 1 / w) * (2 - 1 / w) - 2 * K / (cM * w) * (2 - 1 / w) +
      K * K / (cM2 * w2) + 2 / cM * (2 - 4 / w + 4 / w2 - 1 / w3) +
      K / (cM2 * w) * (-4 + 9 / w - 4 / w2) +
      K * K / (cM3 * w2) * (1 - 2 / w);

  const double C8 =
      4 * K / cM * (1 - 1 / w) * (1 - 1 / w) +
      K * K / (cM2 * w) * (-4 + 5 / w) + K * K * K / (cM3 * w2) +
      1 / cM * (4 / w2 * (-2 + 1 / w) * (-2 + 1 / w) - 4) +
      K / (cM2 * w) * (-4 + 51 / w - 84 / w2 + 38 / w3 - 4 / w4) +
      K * K / (cM3 * w2) * (15 - 66 / w + 65 / w2 - 20 / w3 + 1 / w4) +
      K * K * K / (cM4 * w3) * (-8 + 21 / w - 16 / w2 + 3 / w3) +
      K * K * K * K / (cM5 * w4) * (1 - 1 / w) * (1 - 1 / w);

  return {C4, C5, C6, C7, C8};
}

double ins_sum_rate(double M, double K, double c, double omega,
                    double rho_t) {
  const InsCoefficients co = ins_coefficients(M, K, c, omega);
  const double denom = (1.0 / rho_t) * (K / M) * co.C2 + (K - 1) * co.C3;
  return K * std::log2(1.0 + co.C1 / denom);
}

double icns_sum_rate(double M, double K, double c, double omega,
                     double rho_t) {
  const IcnsCoefficients co = icns_coefficients(M, K, c, omega);
  const double noise = (1.0 / rho_t) * (K / M) * co.C5;
  return std::log2(1.0 + co.C4 / (noise + co.C6)) +
         (K - 1) * std::log2(1.0 + co.C7 / (noise + co.C8));
}

double zf_sum_rate(double M, double K, double c, double rho_t) {
  if (c * M <= K) {
    throw DegenerateZF("zero-forcing sum-rate needs cM > K, got cM=" +
                       std::to_string(c * M) + ", K=" + std::to_string(K));
  }
  return K * std::log2(1.0 + rho_t * (M / K - 1.0 / c));
}

double mrt_sum_rate_lb(double M, double K, double c, double rho_t) {
  return K * std::log2(1.0 + M / ((K - 1) / c + K / rho_t));
}

double r_star(double c, double rho_t) {
  return c *
         (std::sqrt(9 * c * c + 4 * c * rho_t + 4 * rho_t * rho_t) - 3 * c) /
         (2 * (c + rho_t));
}

double mrt_cross_threshold(double r, double c) { return r * c / (r + c); }

double ins_sinr_asymptotic(double r, double c, double rho_t) {
  return (rho_t / r) /
         (1.0 + r * c / ((r + c) * (r + c)) + rho_t * (r / c) / (r + c));
}

double ins_zf_ratio(double r, double c, double rho_t) {
  if (r >= c) {
    throw DegenerateZF("ZF reference SINR vanishes at r = c");
  }
  return ins_sinr_asymptotic(r, c, rho_t) / (rho_t * (1.0 / r - 1.0 / c));
}

GapCurves icns_ins_gap_curves(double r_over_c) {
  if (!(r_over_c > 0.0) || r_over_c > 1.0) {
    throw BadRange("r/c must be in (0,1], got " + std::to_string(r_over_c));
  }
  const double t = r_over_c;
  const double w = 1.0 + t;  // the asymptotically optimal relaxation
  const double w2 = w * w, w3 = w2 * w, w4 = w3 * w;
  const double omf = (1 - 1 / w) * (1 - 1 / w);

  GapCurves g;
  g.sig_gap_user1 = t * (-8 / w + 16 / w2 - 6 / w3) +
                    t * t * (12 / w2 - 24 / w3 + 11 / w4) +
                    (-6 * t * t * t / w3 + t * t * t * t / w4) * omf;
  g.int_gap_user1 =
      4 * t * t / w2 * (1 - 1 / w) + t * t * t / w3 * (1 / w - 2);
  g.sig_gap_others =
      2 / w2 * (2 - 1 / w + 2 * t * (1 - 1 / w) - t * t / w);
  g.int_gap_others =
      4 / w * omf * (-2 + 1 / w) +
      1 / w * (-8 + 56 / w - 84 / w2 + 38 / w3 - 4 / w4) * t +
      1 / w2 * (16 - 66 / w + 65 / w2 - 20 / w3 + 1 / w4) * t * t +
      1 / w3 * (-8 + 21 / w - 16 / w2 + 3 / w3) * t * t * t +
      1 / w4 * omf * t * t * t * t;
  return g;
}

}  // namespace nsprec
