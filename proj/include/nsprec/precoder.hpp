// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include <Eigen/Dense>

#include "nsprec/channel.hpp"
#include "nsprec/precondition.hpp"

namespace nsprec {

enum class Scheme { ZF, MRT, NS };

/// Which precoder to build. For NS the precondition family (and its
/// relaxation parameter) must be supplied; the series order is fixed at
/// one in all production paths.
struct PrecoderSpec {
  Scheme scheme;
  PreconditionKind kind{PreconditionTag::INS, 1.0};  // meaningful for NS only

  static PrecoderSpec zf() { return {Scheme::ZF}; }
  static PrecoderSpec mrt() { return {Scheme::MRT}; }
  static PrecoderSpec ns(PreconditionKind k) { return {Scheme::NS, k}; }
};

struct PrecodingOutput {
  Eigen::MatrixXcd W;  // M x K, scaled by beta
  double beta = 1.0;   // normalization scalar actually applied
};

/// Truncated Neumann series for G^{-1}: sum_{n=0}^{order} (I - D^{-1}G)^n
/// D^{-1}. order = 1 reduces to 2 D^{-1} - D^{-1} G D^{-1}. Orders above
/// one exist for validation only, not as precoder products.
Eigen::MatrixXcd ns_approx_inverse(const Eigen::MatrixXcd& D_inv,
                                   const Eigen::MatrixXcd& G, int order);

/// Unnormalized precoding matrix:
///   ZF   H (H^H H)^{-1}   (Hermitian-PD factorization solve, never an
///        explicit inverse; throws SingularGram if the factorization fails)
///   MRT  H
///   NS   (1/M) H (2 D^{-1} - D^{-1} G D^{-1})
Eigen::MatrixXcd precoder_unnormalized(const PrecoderSpec& spec,
                                       const ChannelRealization& real);

/// Builds and normalizes the precoder.
///
/// PerRealization mode rescales so tr(W W^H) = 1 for this draw.
/// Statistical mode applies beta = 1/sqrt(stat_scale) when the caller
/// supplies the batch estimate of E{tr(W0 W0^H)} (see the two-pass
/// estimators in simulate); with no scale given the raw matrix is
/// returned with beta = 1.
PrecodingOutput build_precoder(const PrecoderSpec& spec,
                               const ChannelRealization& real,
                               const SystemConfig& cfg,
                               std::optional<double> stat_scale = {});

/// Effective channel H^H W.
Eigen::MatrixXcd effective_channel(const ChannelRealization& real,
                                   const PrecodingOutput& out);

/// SINR_k = |[H^H W]_kk|^2 / (sum_{j != k} |[H^H W]_kj|^2 + 1/rho_t).
Eigen::VectorXd sinr_per_user(const ChannelRealization& real,
                              const PrecodingOutput& out, double rho_t);

}  // namespace nsprec
