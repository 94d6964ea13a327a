// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations, kept independent of the library's
// closed-form code paths.
#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "nsprec/rng.hpp"

namespace oracles {

/// General-purpose dense inverse (full-pivot LU), no structure exploited.
inline Eigen::MatrixXcd dense_inverse(const Eigen::MatrixXcd& A) {
  return Eigen::FullPivLU<Eigen::MatrixXcd>(A).inverse();
}

/// Off-diagonal column energy by a literal double loop.
inline Eigen::VectorXd offdiag_energy_bruteforce(const Eigen::MatrixXcd& G) {
  const Eigen::Index K = G.cols();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(K);
  for (Eigen::Index j = 0; j < K; ++j) {
    for (Eigen::Index i = 0; i < K; ++i) {
      if (i != j) out(j) += std::norm(G(i, j));
    }
  }
  return out;
}

/// Random Hermitian-PSD Gram matrix G = X^H X / n from a seeded n x K
/// Gaussian factor.
inline Eigen::MatrixXcd random_gram(int K, int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const Eigen::MatrixXcd X = nsprec::complex_gaussian(n, K, gen);
  Eigen::MatrixXcd G = (X.adjoint() * X) / static_cast<double>(n);
  return 0.5 * (G + G.adjoint());
}

/// Truncated series computed the explicit way: powers of -D^{-1}(G - D)
/// accumulated term by term.
inline Eigen::MatrixXcd ns_series_reference(const Eigen::MatrixXcd& D,
                                            const Eigen::MatrixXcd& D_inv,
                                            const Eigen::MatrixXcd& G,
                                            int order) {
  const Eigen::Index K = G.rows();
  const Eigen::MatrixXcd E = G - D;
  const Eigen::MatrixXcd base = -(D_inv * E);
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(K, K);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(K, K);
  for (int n = 0; n <= order; ++n) {
    sum += power * D_inv;
    power = (power * base).eval();
  }
  return sum;
}

}  // namespace oracles
