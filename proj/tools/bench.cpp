// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference engine against the OpenMP engine on the
// Monte Carlo kernels and verifies their results are bit-identical.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "nsprec/simulate.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nsprec;
  const long trials = argc > 1 ? std::atol(argv[1]) : 4000;
  const int max_threads = omp_get_max_threads();

  SystemConfig cfg;
  cfg.M = 100;
  cfg.K = 10;
  cfg.c = 0.5;
  cfg.rho_t = 10.0;
  const PrecoderSpec spec =
      PrecoderSpec::ns(PreconditionKind::icns(omega_star(100, 10, 0.5)));

  std::printf("Monte Carlo engine comparison, %ld trials, up to %d threads\n",
              trials, max_threads);
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "omp[s]",
              "speedup");

  {
    MonteCarloPlan serial{trials, 42, 1};
    MonteCarloPlan parallel{trials, 42, max_threads};
    SumRateEstimate a, b;
    const double ts = timed([&] { a = ergodic_sum_rate(cfg, spec, serial); });
    const double tp =
        timed([&] { b = ergodic_sum_rate(cfg, spec, parallel); });
    if (a.mean != b.mean || a.std_error != b.std_error) {
      std::fprintf(stderr, "FAIL: engines disagree (%.17g vs %.17g)\n",
                   a.mean, b.mean);
      return 1;
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx\n", "ergodic_sum_rate(ICNS)", ts,
                tp, ts / tp);
  }
  {
    MonteCarloPlan serial{trials, 42, 1};
    MonteCarloPlan parallel{trials, 42, max_threads};
    SumRateEstimate a, b;
    const double ts =
        timed([&] { a = sum_rate_simu_approx(cfg, spec, serial); });
    const double tp =
        timed([&] { b = sum_rate_simu_approx(cfg, spec, parallel); });
    if (a.mean != b.mean) {
      std::fprintf(stderr, "FAIL: engines disagree\n");
      return 1;
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx\n", "sum_rate_simu_approx(ICNS)",
                ts, tp, ts / tp);
  }
  {
    std::vector<MomentReport> a, b;
    const double ts = timed([&] { a = gaussian_moments(64, trials * 10, 7, 1); });
    const double tp = timed(
        [&] { b = gaussian_moments(64, trials * 10, 7, max_threads); });
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].empirical != b[i].empirical) {
        std::fprintf(stderr, "FAIL: engines disagree on %s\n",
                     a[i].name.c_str());
        return 1;
      }
    }
    std::printf("%-28s %10.3f %10.3f %7.2fx\n", "gaussian_moments(n=64)", ts,
                tp, ts / tp);
  }
  std::printf("engines agree bit-for-bit\n");
  return 0;
}
