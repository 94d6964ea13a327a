// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nsprec/analysis.hpp"
#include "nsprec/simulate.hpp"

using namespace nsprec;

namespace {
SystemConfig make_cfg(int M, int K, double c, double rho,
                      NormMode mode = NormMode::PerRealization) {
  SystemConfig cfg;
  cfg.M = M;
  cfg.K = K;
  cfg.c = c;
  cfg.rho_t = rho;
  cfg.norm_mode = mode;
  return cfg;
}
}  // namespace

TEST_CASE("estimates are independent of the parallel width") {
  const auto cfg = make_cfg(24, 4, 0.5, 10.0);
  const auto spec = PrecoderSpec::ns(PreconditionKind::icns(1.3));
  const MonteCarloPlan serial{1200, 99, 1};
  const MonteCarloPlan two{1200, 99, 2};
  const MonteCarloPlan four{1200, 99, 4};

  const auto a = ergodic_sum_rate(cfg, spec, serial);
  const auto b = ergodic_sum_rate(cfg, spec, two);
  const auto c = ergodic_sum_rate(cfg, spec, four);
  CHECK(a.mean == b.mean);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.per_user_means == b.per_user_means);

  const auto sa = sum_rate_simu_approx(cfg, spec, serial);
  const auto sb = sum_rate_simu_approx(cfg, spec, four);
  CHECK(sa.mean == sb.mean);
  CHECK(sa.std_error == sb.std_error);

  const auto ea = eigen_edge_report(cfg, 96, 5, 1);
  const auto eb = eigen_edge_report(cfg, 96, 5, 4);
  CHECK(ea.first.empirical == eb.first.empirical);
  CHECK(ea.second.empirical == eb.second.empirical);
}

TEST_CASE("identical plans reproduce identical estimates") {
  const auto cfg = make_cfg(16, 2, 0.5, 10.0);
  const MonteCarloPlan plan{700, 1234, 0};
  const auto a = ergodic_sum_rate(cfg, PrecoderSpec::zf(), plan);
  const auto b = ergodic_sum_rate(cfg, PrecoderSpec::zf(), plan);
  CHECK(a.mean == b.mean);
  const MonteCarloPlan other{700, 1235, 0};
  CHECK(a.mean != ergodic_sum_rate(cfg, PrecoderSpec::zf(), other).mean);
}

TEST_CASE("single-user schemes agree within standard errors") {
  const auto cfg = make_cfg(16, 1, 1.0, 10.0);
  const MonteCarloPlan plan{2000, 7, 0};
  const auto zf = ergodic_sum_rate(cfg, PrecoderSpec::zf(), plan);
  const auto mrt = ergodic_sum_rate(cfg, PrecoderSpec::mrt(), plan);
  const auto ins = ergodic_sum_rate(
      cfg, PrecoderSpec::ns(PreconditionKind::ins(1.0)), plan);
  CHECK(std::abs(zf.mean - mrt.mean) < 1e-9);
  CHECK(std::abs(zf.mean - ins.mean) <
        2 * (zf.std_error + ins.std_error) + 1e-9);
}

TEST_CASE("standard error shrinks like one over sqrt(trials)") {
  const auto cfg = make_cfg(16, 2, 1.0, 10.0);
  const auto spec = PrecoderSpec::mrt();
  const auto small = ergodic_sum_rate(cfg, spec, {1000, 3, 0});
  const auto big = ergodic_sum_rate(cfg, spec, {4000, 3, 0});
  CHECK(big.std_error ==
        doctest::Approx(small.std_error / 2.0).epsilon(0.30));
}

TEST_CASE("sum-rate is monotone in snr and antennas") {
  const auto spec = PrecoderSpec::ns(PreconditionKind::dns());
  const MonteCarloPlan plan{1500, 21, 0};
  double prev = 0.0;
  for (double rho : {2.0, 10.0, 50.0}) {
    const auto est = ergodic_sum_rate(make_cfg(24, 4, 0.5, rho), spec, plan);
    CHECK(est.mean > prev + 2 * est.std_error);
    prev = est.mean;
  }
  prev = 0.0;
  for (int M : {24, 48, 96}) {
    const auto est = ergodic_sum_rate(make_cfg(M, 4, 0.5, 10.0), spec, plan);
    CHECK(est.mean > prev + 2 * est.std_error);
    prev = est.mean;
  }
}

TEST_CASE("per-user means sum to the mean rate") {
  const auto cfg = make_cfg(20, 4, 1.0, 10.0);
  const auto est = ergodic_sum_rate(
      cfg, PrecoderSpec::ns(PreconditionKind::cns()), {500, 11, 0});
  CHECK(est.per_user_means.sum() == doctest::Approx(est.mean).epsilon(1e-12));
  CHECK(est.trials == 500);
  CHECK(est.mean >= 0.0);
}

TEST_CASE("statistical-mode zero-forcing matches the Wishart closed form") {
  const auto cfg = make_cfg(64, 8, 0.5, 10.0, NormMode::Statistical);
  const auto est = ergodic_sum_rate(cfg, PrecoderSpec::zf(), {3000, 17, 0});
  const double closed = zf_sum_rate(64, 8, 0.5, 10.0);
  CHECK(est.mean == doctest::Approx(closed).epsilon(0.03));
}

TEST_CASE("simu-approx tracks the closed forms at desk scale") {
  const auto cfg = make_cfg(60, 10, 0.5, 10.0);
  const auto est = sum_rate_simu_approx(
      cfg, PrecoderSpec::ns(PreconditionKind::ins(4.0 / 3.0)), {3000, 23, 0});
  CHECK(est.mean ==
        doctest::Approx(ins_sum_rate(60, 10, 0.5, 4.0 / 3.0, 10.0))
            .epsilon(0.05));
  CHECK(est.std_error > 0.0);
  CHECK(est.std_error < 0.05 * est.mean);
}

TEST_CASE("approximation gap closes as the array grows") {
  // Gap between simu-approx and the ergodic rate, relative to the rate,
  // shrinks from M=60 to M=200 at fixed K. (The absolute offset stays
  // near-constant while the rate itself grows.)
  const auto gap_at = [](int M, std::uint64_t seed) {
    const auto cfg = make_cfg(M, 10, 0.5, 10.0, NormMode::Statistical);
    const auto spec = PrecoderSpec::ns(
        PreconditionKind::icns(omega_star(M, 10, 0.5)));
    const MonteCarloPlan plan{1500, seed, 0};
    const double ergodic = ergodic_sum_rate(cfg, spec, plan).mean;
    const double approx = sum_rate_simu_approx(cfg, spec, plan).mean;
    return std::abs(approx - ergodic) / ergodic;
  };
  const double at60 = gap_at(60, 77);
  const double at200 = gap_at(200, 78);
  CHECK(at200 < at60);
}

TEST_CASE("matched filter clears its lower bound") {
  const auto cfg = make_cfg(60, 10, 0.5, 10.0, NormMode::Statistical);
  const auto est = ergodic_sum_rate(cfg, PrecoderSpec::mrt(), {1500, 83, 0});
  CHECK(est.mean >= mrt_sum_rate_lb(60, 10, 0.5, 10.0) - 2 * est.std_error);
}

TEST_CASE("gaussian moment oracle hits exact targets") {
  const auto reports = gaussian_moments(4, 30000, 2024);
  REQUIRE(reports.size() == 10);
  CHECK(reports[0].target == 4.0);
  CHECK(reports[4].target == 20.0);
  CHECK(reports[5].target == 120.0);
  CHECK(reports[6].target == 840.0);
  CHECK(reports[7].target == 5.0);
  for (std::size_t i : {0u, 4u, 5u, 6u, 7u, 8u, 9u}) {
    INFO(reports[i].name);
    CHECK(reports[i].rel_err < 0.06);
  }
  // n = 2 spot values from the factorial-moment ladder.
  const auto r2 = gaussian_moments(2, 20000, 11);
  CHECK(r2[5].target == 24.0);
  CHECK(r2[6].target == 120.0);
}

TEST_CASE("edge report at K=1 sees the scalar Gram near one") {
  // Scalar G = ||z||^2/(cM), so both edges sit at 1 +- O(1/sqrt(cM)).
  const auto cfg = make_cfg(128, 1, 0.5, 10.0);
  const auto [lo, hi] = eigen_edge_report(cfg, 96, 3);
  CHECK(lo.target == doctest::Approx(0.765625).epsilon(1e-12));
  CHECK(hi.target == doctest::Approx(1.265625).epsilon(1e-12));
  CHECK(lo.empirical == doctest::Approx(1.0).epsilon(0.30));
  CHECK(hi.empirical == doctest::Approx(1.0).epsilon(0.30));
  CHECK(lo.empirical < hi.empirical);
}

TEST_CASE("edge report stays inside the asymptotic interval inflated by 5%") {
  const auto cfg = make_cfg(200, 20, 0.5, 10.0);
  const auto [lo, hi] = eigen_edge_report(cfg, 96, 13);
  CHECK(lo.empirical > lo.target * 0.95);
  CHECK(hi.empirical < hi.target * 1.05);
}

TEST_CASE("skip budget boundary") {
  CHECK_FALSE(skip_budget_exceeded(0, 10000));
  CHECK_FALSE(skip_budget_exceeded(10, 10000));  // exactly 0.1%
  CHECK(skip_budget_exceeded(11, 10000));
  CHECK(skip_budget_exceeded(1, 100));
}
