// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "nsprec/errors.hpp"

namespace nsprec {

/// The precondition matrix families for the first-order Neumann-series
/// approximation of G^{-1}.
///
///   INS          D = omega * I
///   DNS          D = diag(G)
///   TNS          D = tridiagonal part of G
///   CNS          D = diag(G) + off-diagonal first column of G
///   ICNS         D = omega * I + off-diagonal first column of G
///   OrderedICNS  D = omega * I + off-diagonal column of G with the
///                largest off-diagonal energy
enum class PreconditionTag { INS, DNS, TNS, CNS, ICNS, OrderedICNS };

const char* to_string(PreconditionTag tag);
std::optional<PreconditionTag> parse_precondition_tag(const std::string& s);

/// True for the families that take a relaxation parameter.
bool requires_omega(PreconditionTag tag);

struct PreconditionKind {
  PreconditionTag tag;
  /// Relaxation parameter; required (and > 0) for INS/ICNS/OrderedICNS,
  /// must be absent for DNS/TNS/CNS.
  std::optional<double> omega{};

  static PreconditionKind ins(double omega) {
    return {PreconditionTag::INS, omega};
  }
  static PreconditionKind dns() { return {PreconditionTag::DNS}; }
  static PreconditionKind tns() { return {PreconditionTag::TNS}; }
  static PreconditionKind cns() { return {PreconditionTag::CNS}; }
  static PreconditionKind icns(double omega) {
    return {PreconditionTag::ICNS, omega};
  }
  static PreconditionKind ordered_icns(double omega) {
    return {PreconditionTag::OrderedICNS, omega};
  }
};

/// Asymptotic support edges of the spectrum of G for effective loading
/// r_eff = K/(cM):  a_bar = (1 - sqrt(r_eff))^2, b_bar = (1 + sqrt(r_eff))^2.
struct MpEdges {
  double a_bar;
  double b_bar;
};

/// Throws BadRange unless r_eff is in (0, 1].
MpEdges mp_edges(double r_eff);

/// Relaxation parameter maximizing the asymptotic Neumann-series
/// convergence speed: (a_bar + b_bar)/2, which equals 1 + K/(cM).
double omega_star(int M, int K, double c);

struct PreconditionMatrix {
  Eigen::MatrixXcd D;
  Eigen::MatrixXcd D_inv;
  PreconditionKind kind;
  /// OrderedICNS only: 0-based index of the selected column (ties go to
  /// the smallest index).
  std::optional<int> selected_column{};
};

/// Assembles D for the given family and computes its inverse in closed
/// form (see invert_precondition).
PreconditionMatrix build_precondition(const PreconditionKind& kind,
                                      const Eigen::MatrixXcd& G);

/// Closed-form inverse of a precondition matrix:
///   INS           (1/omega) I
///   DNS           entrywise reciprocal of the diagonal
///   TNS           non-pivoting tridiagonal elimination
///   CNS           (I - Gc~) diag(G)^{-1}, Gc~ the column scaled by the
///                 diagonal
///   ICNS/Ordered  (1/omega) I - (1/omega^2) C, exact because the
///                 single-column matrix C is nilpotent (C^2 = 0)
///
/// Throws SingularPrecondition when a required diagonal/pivot entry has
/// magnitude below 1e-12.
Eigen::MatrixXcd invert_precondition(const PreconditionKind& kind,
                                     const Eigen::MatrixXcd& D);

/// Spectral norm of -D^{-1}E = I - D^{-1}G, the Neumann iteration matrix;
/// values below 1 mean the series converges. Power iteration with 1e-8
/// relative tolerance and a 10k iteration cap.
double spectral_check(const Eigen::MatrixXcd& D_inv,
                      const Eigen::MatrixXcd& G);

}  // namespace nsprec
