// SPDX-License-Identifier: Apache-2.0
#include "nsprec/channel.hpp"

#include <cmath>

#include "nsprec/rng.hpp"

namespace nsprec {

namespace {
// Sub-stream tags so A and Ztilde never share generator state; Ztilde is
// identical whether A is redrawn or held fixed.
constexpr std::uint64_t kDirectionStream = 0xA0;
constexpr std::uint64_t kInnerStream = 0x21;
}  // namespace

Eigen::MatrixXcd draw_direction_matrix(int M, int dim, std::uint64_t seed) {
  std::mt19937_64 gen(substream(seed, kDirectionStream));
  const Eigen::MatrixXcd X = complex_gaussian(M, dim, gen);
  // Thin Q factor: numerically stable column orthogonalization.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(X);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(M, dim);
}

ChannelRealization draw_realization_with(const Eigen::MatrixXcd& A,
                                         const SystemConfig& cfg,
                                         std::uint64_t seed) {
  validate_config(cfg);
  const int cm = cfg.effective_dim();

  ChannelRealization real;
  real.A = A;
  std::mt19937_64 gen(substream(seed, kInnerStream));
  real.Ztilde = complex_gaussian(cm, cfg.K, gen);
  real.H = (1.0 / std::sqrt(cfg.c)) * (real.A * real.Ztilde);
  real.G = (real.H.adjoint() * real.H) / static_cast<double>(cfg.M);
  // Re-symmetrize so the structured closed-form inverses downstream see an
  // exactly Hermitian matrix.
  real.G = 0.5 * (real.G + real.G.adjoint()).eval();
  return real;
}

ChannelRealization draw_realization(const SystemConfig& cfg,
                                    std::uint64_t seed) {
  validate_config(cfg);
  const int cm = cfg.effective_dim();
  const std::uint64_t a_seed = cfg.fixed_a_seed ? *cfg.fixed_a_seed : seed;
  return draw_realization_with(draw_direction_matrix(cfg.M, cm, a_seed), cfg,
                               seed);
}

Eigen::MatrixXcd draw_gram(const SystemConfig& cfg, std::uint64_t seed) {
  validate_config(cfg);
  const int cm = cfg.effective_dim();
  std::mt19937_64 gen(substream(seed, kInnerStream));
  const Eigen::MatrixXcd Zt = complex_gaussian(cm, cfg.K, gen);
  Eigen::MatrixXcd G = (Zt.adjoint() * Zt) / static_cast<double>(cm);
  G = 0.5 * (G + G.adjoint()).eval();
  return G;
}

Eigen::VectorXd gram_offdiag(const Eigen::MatrixXcd& G) {
  const Eigen::Index K = G.cols();
  Eigen::VectorXd energy(K);
  for (Eigen::Index j = 0; j < K; ++j) {
    energy(j) = G.col(j).squaredNorm() - std::norm(G(j, j));
  }
  return energy;
}

}  // namespace nsprec
