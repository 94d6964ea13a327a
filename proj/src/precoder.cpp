// SPDX-License-Identifier: Apache-2.0
#include "nsprec/precoder.hpp"

#include <cmath>

namespace nsprec {

Eigen::MatrixXcd ns_approx_inverse(const Eigen::MatrixXcd& D_inv,
                                   const Eigen::MatrixXcd& G, int order) {
  if (order < 0) throw BadRange("series order must be >= 0");
  const Eigen::Index K = G.rows();
  // sum_n (-D^{-1}E)^n D^{-1} with -D^{-1}E = I - D^{-1}G.
  const Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(K, K) - D_inv * G;
  Eigen::MatrixXcd series = Eigen::MatrixXcd::Identity(K, K);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(K, K);
  for (int n = 0; n < order; ++n) {
    term = (term * P).eval();
    series += term;
  }
  return series * D_inv;
}

Eigen::MatrixXcd precoder_unnormalized(const PrecoderSpec& spec,
                                       const ChannelRealization& real) {
  switch (spec.scheme) {
    case Scheme::MRT:
      return real.H;
    case Scheme::ZF: {
      const Eigen::Index K = real.G.cols();
      // H (H^H H)^{-1} via a Cholesky solve on the Gram matrix.
      Eigen::LLT<Eigen::MatrixXcd> llt(real.H.adjoint() * real.H);
      if (llt.info() != Eigen::Success) {
        throw SingularGram("Gram matrix factorization failed");
      }
      return real.H *
             llt.solve(Eigen::MatrixXcd::Identity(K, K));
    }
    case Scheme::NS: {
      const PreconditionMatrix pm = build_precondition(spec.kind, real.G);
      const Eigen::MatrixXcd T =
          2.0 * pm.D_inv - pm.D_inv * real.G * pm.D_inv;
      return (1.0 / real.H.rows()) * (real.H * T);
    }
  }
  throw BadRange("unknown scheme");
}

PrecodingOutput build_precoder(const PrecoderSpec& spec,
                               const ChannelRealization& real,
                               const SystemConfig& cfg,
                               std::optional<double> stat_scale) {
  PrecodingOutput out;
  out.W = precoder_unnormalized(spec, real);
  if (cfg.norm_mode == NormMode::PerRealization) {
    out.beta = 1.0 / out.W.norm();  // tr(W W^H) = ||W||_F^2
  } else {
    out.beta = stat_scale ? 1.0 / std::sqrt(*stat_scale) : 1.0;
  }
  out.W *= out.beta;
  return out;
}

Eigen::MatrixXcd effective_channel(const ChannelRealization& real,
                                   const PrecodingOutput& out) {
  return real.H.adjoint() * out.W;
}

Eigen::VectorXd sinr_per_user(const ChannelRealization& real,
                              const PrecodingOutput& out, double rho_t) {
  const Eigen::MatrixXcd Heff = effective_channel(real, out);
  const Eigen::Index K = Heff.rows();
  Eigen::VectorXd sinr(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double signal = std::norm(Heff(k, k));
    const double interference =
        Heff.row(k).squaredNorm() - signal;
    sinr(k) = signal / (interference + 1.0 / rho_t);
  }
  return sinr;
}

}  // namespace nsprec
