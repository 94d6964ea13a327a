// SPDX-License-Identifier: Apache-2.0
#include "nsprec/simulate.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <optional>

#include "nsprec/rng.hpp"

namespace nsprec {

bool skip_budget_exceeded(long skips, long trials) {
  return skips * 1000 > trials;
}

namespace {

double log2_rate(double sinr) { return std::log2(1.0 + sinr); }

struct RateAccum {
  double sum = 0.0;
  double sumsq = 0.0;
  Eigen::VectorXd user_sum;
  long count = 0;
  long skips = 0;
};

void merge(RateAccum& into, const RateAccum& from) {
  into.sum += from.sum;
  into.sumsq += from.sumsq;
  into.user_sum += from.user_sum;
  into.count += from.count;
  into.skips += from.skips;
}

struct ScaleAccum {
  double sum = 0.0;
  long count = 0;
  long skips = 0;
};

struct MomentAccum {
  Eigen::MatrixXd msq;  // entrywise second moments of H^H W0
  double scale = 0.0;   // tr(W0 W0^H)
  long count = 0;
  long skips = 0;
};

void merge(MomentAccum& into, const MomentAccum& from) {
  into.msq += from.msq;
  into.scale += from.scale;
  into.count += from.count;
  into.skips += from.skips;
}

void enforce_skip_policy(long skips, long trials, const char* where) {
  if (skips == 0) return;
  if (skip_budget_exceeded(skips, trials)) {
    throw SingularGram(std::string(where) + ": " + std::to_string(skips) +
                       " of " + std::to_string(trials) +
                       " draws degenerate (budget is 0.1%)");
  }
  std::fprintf(stderr, "warning: %s skipped %ld of %ld degenerate draws\n",
               where, skips, trials);
}

std::optional<Eigen::MatrixXcd> prebuilt_direction(const SystemConfig& cfg) {
  if (!cfg.fixed_a_seed) return std::nullopt;
  return draw_direction_matrix(cfg.M, cfg.effective_dim(), *cfg.fixed_a_seed);
}

ChannelRealization draw_for_trial(
    const SystemConfig& cfg, const std::optional<Eigen::MatrixXcd>& fixed_a,
    std::uint64_t seed) {
  return fixed_a ? draw_realization_with(*fixed_a, cfg, seed)
                 : draw_realization(cfg, seed);
}

/// Batch estimate of E{tr(W0 W0^H)} over the plan's seeded draws (the
/// first pass of the statistical-normalization estimators).
double estimate_power_scale(const SystemConfig& cfg, const PrecoderSpec& spec,
                            const MonteCarloPlan& plan,
                            const std::optional<Eigen::MatrixXcd>& fixed_a) {
  auto partial = detail::run_chunks(
      plan.trials, plan.parallel_width, ScaleAccum{},
      [&](ScaleAccum& acc, long t) {
        const auto real =
            draw_for_trial(cfg, fixed_a, trial_seed(plan.master_seed, t));
        try {
          acc.sum += precoder_unnormalized(spec, real).squaredNorm();
        } catch (const SingularGram&) {
          ++acc.skips;
          return;
        }
        ++acc.count;
      });
  const ScaleAccum total = detail::merge_in_order(
      std::move(partial), [](ScaleAccum& a, const ScaleAccum& b) {
        a.sum += b.sum;
        a.count += b.count;
        a.skips += b.skips;
      });
  enforce_skip_policy(total.skips, plan.trials, "power-scale pass");
  return total.sum / total.count;
}

}  // namespace

SumRateEstimate ergodic_sum_rate(const SystemConfig& cfg,
                                 const PrecoderSpec& spec,
                                 const MonteCarloPlan& plan) {
  validate_config(cfg);
  if (plan.trials < 1) throw BadRange("trials must be positive");
  const auto fixed_a = prebuilt_direction(cfg);

  std::optional<double> stat_scale;
  if (cfg.norm_mode == NormMode::Statistical) {
    stat_scale = estimate_power_scale(cfg, spec, plan, fixed_a);
  }

  RateAccum init;
  init.user_sum = Eigen::VectorXd::Zero(cfg.K);
  auto partial = detail::run_chunks(
      plan.trials, plan.parallel_width, init, [&](RateAccum& acc, long t) {
        const auto real =
            draw_for_trial(cfg, fixed_a, trial_seed(plan.master_seed, t));
        PrecodingOutput out;
        try {
          out = build_precoder(spec, real, cfg, stat_scale);
        } catch (const SingularGram&) {
          ++acc.skips;
          return;
        }
        const Eigen::VectorXd sinr = sinr_per_user(real, out, cfg.rho_t);
        double rate = 0.0;
        for (Eigen::Index k = 0; k < sinr.size(); ++k) {
          const double rk = log2_rate(sinr(k));
          acc.user_sum(k) += rk;
          rate += rk;
        }
        acc.sum += rate;
        acc.sumsq += rate * rate;
        ++acc.count;
      });
  RateAccum total = detail::merge_in_order(
      std::move(partial),
      [](RateAccum& a, const RateAccum& b) { merge(a, b); });
  enforce_skip_policy(total.skips, plan.trials, "ergodic sum-rate");

  SumRateEstimate est;
  est.trials = total.count;
  est.mean = total.sum / total.count;
  est.per_user_means = total.user_sum / static_cast<double>(total.count);
  if (total.count > 1) {
    const double var =
        (total.sumsq - total.count * est.mean * est.mean) / (total.count - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / total.count);
  }
  return est;
}

SumRateEstimate sum_rate_simu_approx(const SystemConfig& cfg,
                                     const PrecoderSpec& spec,
                                     const MonteCarloPlan& plan) {
  validate_config(cfg);
  if (plan.trials < 1) throw BadRange("trials must be positive");
  const auto fixed_a = prebuilt_direction(cfg);

  MomentAccum init;
  init.msq = Eigen::MatrixXd::Zero(cfg.K, cfg.K);
  auto partial = detail::run_chunks(
      plan.trials, plan.parallel_width, init, [&](MomentAccum& acc, long t) {
        const auto real =
            draw_for_trial(cfg, fixed_a, trial_seed(plan.master_seed, t));
        Eigen::MatrixXcd W0;
        try {
          W0 = precoder_unnormalized(spec, real);
        } catch (const SingularGram&) {
          ++acc.skips;
          return;
        }
        const Eigen::MatrixXcd Heff0 = real.H.adjoint() * W0;
        acc.msq += Heff0.array().abs2().matrix();
        acc.scale += W0.squaredNorm();
        ++acc.count;
      });

  // The estimator applied to one merged accumulator.
  const auto evaluate = [&](const MomentAccum& acc) {
    const Eigen::MatrixXd m = acc.msq / acc.count;
    const double s = acc.scale / acc.count;
    Eigen::VectorXd user(cfg.K);
    double rate = 0.0;
    for (int k = 0; k < cfg.K; ++k) {
      const double interference = (m.row(k).sum() - m(k, k)) / s;
      const double sinr =
          (m(k, k) / s) / (1.0 / cfg.rho_t + interference);
      user(k) = log2_rate(sinr);
      rate += user(k);
    }
    return std::make_pair(rate, user);
  };

  // Group the chunk partials into at most 16 fixed groups for the ratio
  // estimator's standard error.
  const long ngroups = std::min<long>(16, static_cast<long>(partial.size()));
  std::vector<double> group_rate;
  if (ngroups > 1) {
    const long per = (static_cast<long>(partial.size()) + ngroups - 1) / ngroups;
    for (long g = 0; g < ngroups; ++g) {
      MomentAccum acc = init;
      const long lo = g * per;
      const long hi =
          std::min<long>(static_cast<long>(partial.size()), lo + per);
      for (long i = lo; i < hi; ++i) merge(acc, partial[i]);
      if (acc.count > 0) group_rate.push_back(evaluate(acc).first);
    }
  }

  MomentAccum total = detail::merge_in_order(
      std::move(partial),
      [](MomentAccum& a, const MomentAccum& b) { merge(a, b); });
  enforce_skip_policy(total.skips, plan.trials, "simu-approx sum-rate");

  SumRateEstimate est;
  est.trials = total.count;
  auto [rate, user] = evaluate(total);
  est.mean = rate;
  est.per_user_means = user;
  if (group_rate.size() > 1) {
    double gm = 0.0;
    for (double v : group_rate) gm += v;
    gm /= group_rate.size();
    double var = 0.0;
    for (double v : group_rate) var += (v - gm) * (v - gm);
    var /= (group_rate.size() - 1);
    est.std_error = std::sqrt(var / group_rate.size());
  }
  return est;
}

std::vector<MomentReport> gaussian_moments(int cM, long trials,
                                           std::uint64_t seed,
                                           int parallel_width) {
  if (cM < 1) throw BadRange("cM must be >= 1");
  if (trials < 1) throw BadRange("trials must be positive");
  const double n = cM;

  struct Accum {
    double ip2 = 0, ip4 = 0, ip6 = 0;
    std::complex<double> ip2ip{0.0, 0.0};
    double n2 = 0, n3 = 0, n4 = 0;
    Eigen::MatrixXcd zz;
    Eigen::VectorXcd zv;
  };
  Accum init;
  init.zz = Eigen::MatrixXcd::Zero(cM, cM);
  init.zv = Eigen::VectorXcd::Zero(cM);

  auto partial = detail::run_chunks(
      trials, parallel_width, init, [&](Accum& acc, long t) {
        std::mt19937_64 gen(trial_seed(seed, t));
        const Eigen::VectorXcd zi = complex_gaussian(cM, 1, gen);
        const Eigen::VectorXcd zj = complex_gaussian(cM, 1, gen);
        const std::complex<double> ip = zi.dot(zj);
        const double ip_sq = std::norm(ip);
        acc.ip2 += ip_sq;
        acc.ip4 += ip_sq * ip_sq;
        acc.ip6 += ip_sq * ip_sq * ip_sq;
        acc.ip2ip += ip_sq * ip;
        const double nrm = zi.squaredNorm();
        acc.n2 += nrm * nrm;
        acc.n3 += nrm * nrm * nrm;
        acc.n4 += nrm * nrm * nrm * nrm;
        acc.zz += nrm * (zi * zi.adjoint());
        acc.zv += nrm * zi;
      });
  Accum a = detail::merge_in_order(std::move(partial),
                                   [](Accum& x, const Accum& y) {
                                     x.ip2 += y.ip2;
                                     x.ip4 += y.ip4;
                                     x.ip6 += y.ip6;
                                     x.ip2ip += y.ip2ip;
                                     x.n2 += y.n2;
                                     x.n3 += y.n3;
                                     x.n4 += y.n4;
                                     x.zz += y.zz;
                                     x.zv += y.zv;
                                   });

  const double N = static_cast<double>(trials);
  const double n32 = std::pow(n, 1.5);
  std::vector<MomentReport> reports;
  const auto push = [&](std::string name, double emp, double target) {
    MomentReport r;
    r.name = std::move(name);
    r.empirical = emp;
    r.target = target;
    r.rel_err = target != 0.0 ? std::abs(emp - target) / std::abs(target)
                              : std::abs(emp);
    reports.push_back(std::move(r));
  };

  push("E|zi^H zj|^2", a.ip2 / N, n);
  push("E{|zi^H zj|^2 zi^H zj} / n^1.5", std::abs(a.ip2ip / N) / n32, 0.0);
  push("E|zi^H zj|^4 / n^2", a.ip4 / N / (n * n), 2.0);
  push("E|zi^H zj|^6 / n^3", a.ip6 / N / (n * n * n), 6.0);
  push("E|zi^H zi|^2", a.n2 / N, n * n + n);
  push("E|zi^H zi|^3", a.n3 / N, n * (n + 1) * (n + 2));
  push("E|zi^H zi|^4", a.n4 / N, n * (n + 1) * (n + 2) * (n + 3));

  const Eigen::MatrixXcd zz_mean = a.zz / N;
  push("diag E{zi zi^H zi zi^H}", zz_mean.diagonal().real().mean(), n + 1.0);
  const double offdiag =
      (zz_mean - Eigen::MatrixXcd(zz_mean.diagonal().asDiagonal())).norm();
  push("offdiag E{zi zi^H zi zi^H} / ((n+1) sqrt(n))",
       offdiag / ((n + 1.0) * std::sqrt(n)), 0.0);
  push("||E{zi zi^H zi}|| / n^1.5", (a.zv / N).norm() / n32, 0.0);
  return reports;
}

std::pair<MomentReport, MomentReport> eigen_edge_report(
    const SystemConfig& cfg, long trials, std::uint64_t seed,
    int parallel_width) {
  validate_config(cfg);
  if (trials < 1) throw BadRange("trials must be positive");

  // Per-trial extreme eigenvalues into index-addressed slots; the
  // reduction below is a fixed-order post-pass, so the result is
  // independent of the thread count.
  std::vector<double> mins(trials), maxs(trials);
  detail::run_chunks(trials, parallel_width, 0,
                     [&](int& /*unused*/, long t) {
                       const Eigen::MatrixXcd G =
                           draw_gram(cfg, trial_seed(seed, t));
                       Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                           G, Eigen::EigenvaluesOnly);
                       mins[t] = es.eigenvalues().minCoeff();
                       maxs[t] = es.eigenvalues().maxCoeff();
                     });

  constexpr long kSubBatch = 16;
  const long batches = std::max<long>(1, trials / kSubBatch);
  double lo_sum = 0.0, hi_sum = 0.0;
  for (long b = 0; b < batches; ++b) {
    const long lo_idx = b * kSubBatch;
    const long hi_idx = batches == 1 ? trials
                                     : std::min(trials, lo_idx + kSubBatch);
    double lo_b = std::numeric_limits<double>::infinity();
    double hi_b = -std::numeric_limits<double>::infinity();
    for (long t = lo_idx; t < hi_idx; ++t) {
      lo_b = std::min(lo_b, mins[t]);
      hi_b = std::max(hi_b, maxs[t]);
    }
    lo_sum += lo_b;
    hi_sum += hi_b;
  }

  const MpEdges edges =
      mp_edges(static_cast<double>(cfg.K) / (cfg.c * cfg.M));
  MomentReport lo, hi;
  lo.name = "min eigenvalue support edge";
  lo.empirical = lo_sum / batches;
  lo.target = edges.a_bar;
  lo.rel_err = std::abs(lo.empirical - edges.a_bar) / edges.a_bar;
  hi.name = "max eigenvalue support edge";
  hi.empirical = hi_sum / batches;
  hi.target = edges.b_bar;
  hi.rel_err = std::abs(hi.empirical - edges.b_bar) / edges.b_bar;
  return {lo, hi};
}

}  // namespace nsprec
