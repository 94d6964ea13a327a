// SPDX-License-Identifier: Apache-2.0
#include "nsprec/precondition.hpp"

#include <cmath>
#include <complex>

#include "nsprec/channel.hpp"
#include "nsprec/rng.hpp"

namespace nsprec {

namespace {
constexpr double kPivotFloor = 1e-12;

using Cd = std::complex<double>;

void require_omega_present(const PreconditionKind& kind) {
  if (requires_omega(kind.tag)) {
    if (!kind.omega) {
      throw BadRange(std::string(to_string(kind.tag)) +
                     " requires a relaxation parameter omega");
    }
    if (*kind.omega <= 0.0) {
      throw BadRange("omega must be positive, got " +
                     std::to_string(*kind.omega));
    }
  } else if (kind.omega) {
    throw BadRange(std::string(to_string(kind.tag)) +
                   " takes no relaxation parameter");
  }
}

Cd checked_pivot(Cd value, const char* what) {
  if (std::abs(value) < kPivotFloor) {
    throw SingularPrecondition(std::string(what) +
                               " entry magnitude below 1e-12");
  }
  return value;
}

// Inverse of a tridiagonal matrix by non-pivoting forward elimination and
// back substitution against the K columns of the identity.
Eigen::MatrixXcd invert_tridiagonal(const Eigen::MatrixXcd& D) {
  const Eigen::Index K = D.rows();
  Eigen::VectorXcd sub(K), diag(K), sup(K);
  for (Eigen::Index i = 0; i < K; ++i) {
    diag(i) = D(i, i);
    sub(i) = i > 0 ? D(i, i - 1) : Cd(0);
    sup(i) = i + 1 < K ? D(i, i + 1) : Cd(0);
  }
  // Thomas algorithm: one factorization pass shared by all columns.
  Eigen::VectorXcd c_prime(K);
  Eigen::VectorXcd denom(K);
  denom(0) = checked_pivot(diag(0), "tridiagonal pivot");
  c_prime(0) = sup(0) / denom(0);
  for (Eigen::Index i = 1; i < K; ++i) {
    denom(i) =
        checked_pivot(diag(i) - sub(i) * c_prime(i - 1), "tridiagonal pivot");
    if (i + 1 < K) c_prime(i) = sup(i) / denom(i);
  }
  Eigen::MatrixXcd inv = Eigen::MatrixXcd::Zero(K, K);
  Eigen::VectorXcd d_prime(K);
  for (Eigen::Index col = 0; col < K; ++col) {
    d_prime(0) = (col == 0 ? Cd(1) : Cd(0)) / denom(0);
    for (Eigen::Index i = 1; i < K; ++i) {
      const Cd rhs = (i == col) ? Cd(1) : Cd(0);
      d_prime(i) = (rhs - sub(i) * d_prime(i - 1)) / denom(i);
    }
    inv(K - 1, col) = d_prime(K - 1);
    for (Eigen::Index i = K - 2; i >= 0; --i) {
      inv(i, col) = d_prime(i) - c_prime(i) * inv(i + 1, col);
    }
  }
  return inv;
}

}  // namespace

const char* to_string(PreconditionTag tag) {
  switch (tag) {
    case PreconditionTag::INS: return "INS";
    case PreconditionTag::DNS: return "DNS";
    case PreconditionTag::TNS: return "TNS";
    case PreconditionTag::CNS: return "CNS";
    case PreconditionTag::ICNS: return "ICNS";
    case PreconditionTag::OrderedICNS: return "OrderedICNS";
  }
  return "?";
}

std::optional<PreconditionTag> parse_precondition_tag(const std::string& s) {
  if (s == "INS") return PreconditionTag::INS;
  if (s == "DNS") return PreconditionTag::DNS;
  if (s == "TNS") return PreconditionTag::TNS;
  if (s == "CNS") return PreconditionTag::CNS;
  if (s == "ICNS") return PreconditionTag::ICNS;
  if (s == "OrderedICNS") return PreconditionTag::OrderedICNS;
  return std::nullopt;
}

bool requires_omega(PreconditionTag tag) {
  return tag == PreconditionTag::INS || tag == PreconditionTag::ICNS ||
         tag == PreconditionTag::OrderedICNS;
}

MpEdges mp_edges(double r_eff) {
  if (!(r_eff > 0.0) || r_eff > 1.0) {
    throw BadRange("effective loading r/c must be in (0,1], got " +
                   std::to_string(r_eff));
  }
  const double s = std::sqrt(r_eff);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double omega_star(int M, int K, double c) {
  const MpEdges e = mp_edges(static_cast<double>(K) / (c * M));
  return 0.5 * (e.a_bar + e.b_bar);
}

PreconditionMatrix build_precondition(const PreconditionKind& kind,
                                      const Eigen::MatrixXcd& G) {
  require_omega_present(kind);
  const Eigen::Index K = G.rows();
  PreconditionMatrix pm;
  pm.kind = kind;
  switch (kind.tag) {
    case PreconditionTag::INS:
      pm.D = *kind.omega * Eigen::MatrixXcd::Identity(K, K);
      break;
    case PreconditionTag::DNS:
      pm.D = G.diagonal().asDiagonal();
      break;
    case PreconditionTag::TNS: {
      pm.D = Eigen::MatrixXcd::Zero(K, K);
      for (Eigen::Index i = 0; i < K; ++i) {
        pm.D(i, i) = G(i, i);
        if (i > 0) pm.D(i, i - 1) = G(i, i - 1);
        if (i + 1 < K) pm.D(i, i + 1) = G(i, i + 1);
      }
      break;
    }
    case PreconditionTag::CNS: {
      pm.D = Eigen::MatrixXcd(G.diagonal().asDiagonal());
      pm.D.col(0).tail(K - 1) = G.col(0).tail(K - 1);
      break;
    }
    case PreconditionTag::ICNS: {
      pm.D = *kind.omega * Eigen::MatrixXcd::Identity(K, K);
      pm.D.col(0).tail(K - 1) = G.col(0).tail(K - 1);
      break;
    }
    case PreconditionTag::OrderedICNS: {
      // Column with the largest off-diagonal energy; ties go to the
      // smallest index for reproducibility.
      const Eigen::VectorXd energy = gram_offdiag(G);
      Eigen::Index jstar = 0;
      for (Eigen::Index j = 1; j < K; ++j) {
        if (energy(j) > energy(jstar)) jstar = j;
      }
      pm.D = *kind.omega * Eigen::MatrixXcd::Identity(K, K);
      for (Eigen::Index i = 0; i < K; ++i) {
        if (i != jstar) pm.D(i, jstar) = G(i, jstar);
      }
      pm.selected_column = static_cast<int>(jstar);
      break;
    }
  }
  pm.D_inv = invert_precondition(kind, pm.D);
  return pm;
}

Eigen::MatrixXcd invert_precondition(const PreconditionKind& kind,
                                     const Eigen::MatrixXcd& D) {
  require_omega_present(kind);
  const Eigen::Index K = D.rows();
  switch (kind.tag) {
    case PreconditionTag::INS: {
      const double w = *kind.omega;
      checked_pivot(Cd(w), "INS diagonal");
      return (1.0 / w) * Eigen::MatrixXcd::Identity(K, K);
    }
    case PreconditionTag::DNS: {
      Eigen::MatrixXcd inv = Eigen::MatrixXcd::Zero(K, K);
      for (Eigen::Index i = 0; i < K; ++i) {
        inv(i, i) = 1.0 / checked_pivot(D(i, i), "DNS diagonal");
      }
      return inv;
    }
    case PreconditionTag::TNS:
      return invert_tridiagonal(D);
    case PreconditionTag::CNS: {
      // D = diag * (I + C) with C the diagonal-scaled first column, so
      // D^{-1} = (I - C) diag^{-1}; exact because C^2 = 0.
      Eigen::MatrixXcd inv = Eigen::MatrixXcd::Zero(K, K);
      for (Eigen::Index i = 0; i < K; ++i) {
        inv(i, i) = 1.0 / checked_pivot(D(i, i), "CNS diagonal");
      }
      for (Eigen::Index i = 1; i < K; ++i) {
        inv(i, 0) = -(D(i, 0) / D(i, i)) * inv(0, 0);
      }
      return inv;
    }
    case PreconditionTag::ICNS:
    case PreconditionTag::OrderedICNS: {
      // D = omega I + C with a single off-diagonal column, C^2 = 0, so the
      // two-term series (1/omega) I - (1/omega^2) C is the exact inverse.
      const double w = *kind.omega;
      checked_pivot(Cd(w), "diagonal");
      Eigen::MatrixXcd C = D - w * Eigen::MatrixXcd::Identity(K, K);
      return (1.0 / w) * Eigen::MatrixXcd::Identity(K, K) -
             (1.0 / (w * w)) * C;
    }
  }
  throw BadRange("unknown precondition tag");
}

double spectral_check(const Eigen::MatrixXcd& D_inv,
                      const Eigen::MatrixXcd& G) {
  const Eigen::Index K = G.rows();
  // -D^{-1}E = I - D^{-1}G; spectral norm via power iteration on B^H B.
  const Eigen::MatrixXcd B =
      Eigen::MatrixXcd::Identity(K, K) - D_inv * G;
  std::mt19937_64 gen(0x5eedULL);
  Eigen::VectorXcd v = complex_gaussian(K, 1, gen);
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXcd next = B.adjoint() * (B * v);
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    const double estimate = norm;  // ||B^H B v|| -> sigma_max^2 for unit v
    next /= norm;
    v = next;
    if (it > 0 && std::abs(estimate - sigma2) <= 1e-8 * estimate) {
      sigma2 = estimate;
      break;
    }
    sigma2 = estimate;
  }
  return std::sqrt(sigma2);
}

}  // namespace nsprec
