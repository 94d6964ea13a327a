// SPDX-License-Identifier: Apache-2.0
#include "nsprec/rng.hpp"

#include <cmath>

namespace nsprec {

Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                  std::mt19937_64& gen) {
  // CN(0,1): real/imag each N(0, 1/2). This convention is what the
  // Gaussian moment identities assume; do not change it.
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      out(i, j) = std::complex<double>(re, im);
    }
  }
  return out;
}

}  // namespace nsprec
