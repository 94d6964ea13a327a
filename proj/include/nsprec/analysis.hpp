// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsprec/errors.hpp"

namespace nsprec {

/// Normalized SINR components of the closed-form INS sum-rate: signal
/// power C1, noise scale C2, per-interferer power C3.
struct InsCoefficients {
  double C1;
  double C2;
  double C3;
};

/// Normalized SINR components of the closed-form ICNS sum-rate. User 1
/// (the column user) has signal C4 and interference C6; users 2..K share
/// signal C7 and interference C8; C5 scales the noise for everyone.
struct IcnsCoefficients {
  double C4;
  double C5;
  double C6;
  double C7;
  double C8;
};

InsCoefficients ins_coefficients(double M, double K, double c, double omega);
IcnsCoefficients icns_coefficients(double M, double K, double c, double omega);

/// K log2(1 + C1 / ((1/rho) (K/M) C2 + (K-1) C3))
double ins_sum_rate(double M, double K, double c, double omega, double rho_t);

/// log2(1 + C4 / (noise + C6)) + (K-1) log2(1 + C7 / (noise + C8)),
/// noise = (1/rho) (K/M) C5.
double icns_sum_rate(double M, double K, double c, double omega, double rho_t);

/// K log2(1 + rho_t (M/K - 1/c)); throws DegenerateZF when cM <= K.
double zf_sum_rate(double M, double K, double c, double rho_t);

/// K log2(1 + M / ((K-1)/c + K/rho_t)), a tight lower bound.
double mrt_sum_rate_lb(double M, double K, double c, double rho_t);

/// Loading factor at which the asymptotic INS sum-rate meets ideal ZF:
/// r* = c (sqrt(9c^2 + 4c rho + 4 rho^2) - 3c) / (2 (c + rho)).
double r_star(double c, double rho_t);

/// INS beats the MRT bound when rho_t exceeds r c / (r + c).
double mrt_cross_threshold(double r, double c);

/// Large-system effective SINR of INS at loading r (omega = 1 + r/c):
/// (rho/r) / (1 + r c/(r+c)^2 + rho (r/c)/(r+c)).
double ins_sinr_asymptotic(double r, double c, double rho_t);

/// Ratio of the INS effective SINR to the ideal-ZF effective SINR
/// rho (1/r - 1/c); equals 1 exactly at r = r_star. Throws DegenerateZF
/// at r = c.
double ins_zf_ratio(double r, double c, double rho_t);

/// Leading-order (M-independent) gaps between the ICNS and INS normalized
/// SINR components in the fixed-ratio large-system regime, as functions of
/// t = r/c, evaluated at omega = 1 + t. The users-2..K entries are the
/// cM-scaled gap expressions.
struct GapCurves {
  double sig_gap_user1;
  double int_gap_user1;
  double sig_gap_others;
  double int_gap_others;
};

/// Throws BadRange unless r_over_c is in (0, 1].
GapCurves icns_ins_gap_curves(double r_over_c);

}  // namespace nsprec
