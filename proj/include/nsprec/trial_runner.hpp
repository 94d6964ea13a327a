// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <vector>

#include <omp.h>

namespace nsprec {

/// Execution knobs for the Monte Carlo kernels. Every estimate is
/// invariant to `parallel_width`: trials are seeded statelessly, grouped
/// into fixed chunks, and chunk results are merged in index order, so the
/// floating-point reduction order never depends on the thread count.
struct MonteCarloPlan {
  long trials = 1000;
  std::uint64_t master_seed = 1;
  /// OpenMP thread count; 1 runs the serial reference path, 0 uses the
  /// runtime default.
  int parallel_width = 0;
};

namespace detail {

constexpr long kChunkTrials = 256;

inline long num_chunks(long trials) {
  return (trials + kChunkTrials - 1) / kChunkTrials;
}

/// Serial reference engine: identical chunk structure, no threads.
template <class Accum, class Body>
std::vector<Accum> run_chunks_serial(long trials, const Accum& init,
                                     Body&& body) {
  const long nchunks = num_chunks(trials);
  std::vector<Accum> partial(nchunks, init);
  for (long ci = 0; ci < nchunks; ++ci) {
    const long lo = ci * kChunkTrials;
    const long hi = std::min(trials, lo + kChunkTrials);
    for (long t = lo; t < hi; ++t) body(partial[ci], t);
  }
  return partial;
}

/// OpenMP engine: chunks run concurrently, each accumulating its own
/// trials in index order.
template <class Accum, class Body>
std::vector<Accum> run_chunks_parallel(long trials, int width,
                                       const Accum& init, Body&& body) {
  const long nchunks = num_chunks(trials);
  std::vector<Accum> partial(nchunks, init);
  const int threads = width > 0 ? width : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long ci = 0; ci < nchunks; ++ci) {
    const long lo = ci * kChunkTrials;
    const long hi = std::min(trials, lo + kChunkTrials);
    for (long t = lo; t < hi; ++t) body(partial[ci], t);
  }
  return partial;
}

template <class Accum, class Body>
std::vector<Accum> run_chunks(long trials, int width, const Accum& init,
                              Body&& body) {
  if (width == 1) return run_chunks_serial(trials, init, body);
  return run_chunks_parallel(trials, width, init, body);
}

/// Merges chunk accumulators in index order via `merge(into, from)`.
template <class Accum, class Merge>
Accum merge_in_order(std::vector<Accum>&& partial, Merge&& merge) {
  Accum total = std::move(partial.front());
  for (std::size_t i = 1; i < partial.size(); ++i) merge(total, partial[i]);
  return total;
}

}  // namespace detail
}  // namespace nsprec
