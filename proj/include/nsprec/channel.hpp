// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "nsprec/config.hpp"

namespace nsprec {

/// One draw of the correlated downlink channel.
///
/// The covariance model R = (1/c) A A^H with a semi-unitary M x cM
/// direction matrix A lets the channel be generated directly as
/// H = (1/sqrt(c)) A Ztilde, where Ztilde is cM x K i.i.d. CN(0,1).
/// The Gram matrix G = H^H H / M = Ztilde^H Ztilde / (cM) is what every
/// precoder in this library consumes.
struct ChannelRealization {
  Eigen::MatrixXcd A;       // M x cM, orthonormal columns
  Eigen::MatrixXcd Ztilde;  // cM x K
  Eigen::MatrixXcd H;       // M x K
  Eigen::MatrixXcd G;       // K x K, Hermitian PSD, re-symmetrized
};

/// Semi-unitary direction matrix: thin Q factor of a seeded M x dim
/// complex Gaussian matrix.
Eigen::MatrixXcd draw_direction_matrix(int M, int dim, std::uint64_t seed);

/// Draws one realization. Deterministic: identical (cfg, seed) produce
/// bit-identical output on a given platform. A fresh A is drawn per call
/// unless cfg.fixed_a_seed is set.
ChannelRealization draw_realization(const SystemConfig& cfg,
                                    std::uint64_t seed);

/// Same, with a caller-supplied direction matrix (amortizes the QR when
/// cfg.fixed_a_seed is in use).
ChannelRealization draw_realization_with(const Eigen::MatrixXcd& A,
                                         const SystemConfig& cfg,
                                         std::uint64_t seed);

/// The Gram matrix of draw_realization(cfg, seed), computed directly from
/// the inner Gaussian factor (G = Ztilde^H Ztilde / (cM)). Identical in
/// distribution, and drawn from the same sub-stream, but skips
/// materializing A and H; intended for spectrum-only statistics.
Eigen::MatrixXcd draw_gram(const SystemConfig& cfg, std::uint64_t seed);

/// Per-column squared 2-norms of G - diag(G): the off-diagonal energy each
/// user's column carries (the ordering statistic for ordered ICNS).
Eigen::VectorXd gram_offdiag(const Eigen::MatrixXcd& G);

}  // namespace nsprec
