// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace nsprec {

/// SplitMix64 finalizer. Used as a stateless mixer so that per-trial seeds
/// depend only on (master seed, trial index), never on execution order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a run keyed by `master`.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x51ed2701ULL));
}

/// Independent sub-stream of `seed` tagged by a small integer.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (tag + 1));
}

/// rows x cols matrix of i.i.d. CN(0,1) entries: real and imaginary parts
/// each N(0, 1/2). Entries are drawn column-major, real part first.
Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                  std::mt19937_64& gen);

inline Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                         std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return complex_gaussian(rows, cols, gen);
}

}  // namespace nsprec
