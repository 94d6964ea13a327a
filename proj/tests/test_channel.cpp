// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nsprec/channel.hpp"
#include "nsprec/precondition.hpp"
#include "nsprec/rng.hpp"
#include "oracles.hpp"

using namespace nsprec;

namespace {
SystemConfig make_cfg(int M, int K, double c, double rho) {
  SystemConfig cfg;
  cfg.M = M;
  cfg.K = K;
  cfg.c = c;
  cfg.rho_t = rho;
  return cfg;
}
}  // namespace

TEST_CASE("validate_config accepts the reference operating point") {
  const auto cfg = make_cfg(60, 10, 0.5, 10.0);
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(cfg.effective_dim() == 30);
}

TEST_CASE("validate_config rejects a fractional effective dimension") {
  CHECK_THROWS_AS(validate_config(make_cfg(7, 2, 0.5, 10.0)),
                  NonIntegerEffectiveDimension);
}

TEST_CASE("validate_config rejects K above the multiplexing gain") {
  CHECK_THROWS_AS(validate_config(make_cfg(10, 8, 0.5, 10.0)),
                  OverloadedSystem);
}

TEST_CASE("validate_config range errors") {
  CHECK_THROWS_AS(validate_config(make_cfg(10, 2, 0.0, 10.0)), BadRange);
  CHECK_THROWS_AS(validate_config(make_cfg(10, 2, 1.5, 10.0)), BadRange);
  CHECK_THROWS_AS(validate_config(make_cfg(10, 2, 0.5, -1.0)), BadRange);
  CHECK_THROWS_AS(validate_config(make_cfg(4, 8, 1.0, 10.0)), BadRange);
}

TEST_CASE("draw_realization construction identities") {
  const auto cfg = make_cfg(40, 6, 0.5, 10.0);
  const auto real = draw_realization(cfg, 123);
  const int cm = 20;

  CHECK(real.A.rows() == 40);
  CHECK(real.A.cols() == cm);
  CHECK((real.A.adjoint() * real.A - Eigen::MatrixXcd::Identity(cm, cm))
            .norm() < 1e-10);
  CHECK((real.H - (1.0 / std::sqrt(cfg.c)) * real.A * real.Ztilde).norm() ==
        0.0);
  CHECK((real.G - real.G.adjoint()).norm() < 1e-12);
  // tr(R) = tr(A A^H)/c = cM/c = M.
  CHECK(real.A.squaredNorm() / cfg.c == doctest::Approx(40.0).epsilon(1e-8));
  // Gram from the inner factor matches the H-path Gram.
  CHECK((real.G - (real.Ztilde.adjoint() * real.Ztilde) / double(cm)).norm() <
        1e-10);
  CHECK((draw_gram(cfg, 123) -
         (real.Ztilde.adjoint() * real.Ztilde) / double(cm))
            .norm() < 1e-12);
}

TEST_CASE("draw_realization is bit-deterministic") {
  const auto cfg = make_cfg(4, 2, 1.0, 10.0);
  const auto a = draw_realization(cfg, 77);
  const auto b = draw_realization(cfg, 77);
  CHECK(a.H == b.H);
  const auto c = draw_realization(cfg, 78);
  CHECK(a.H != c.H);
}

TEST_CASE("fixed direction-matrix mode reuses A across trials") {
  auto cfg = make_cfg(16, 3, 0.5, 10.0);
  cfg.fixed_a_seed = 5;
  const auto a = draw_realization(cfg, 100);
  const auto b = draw_realization(cfg, 101);
  CHECK(a.A == b.A);
  CHECK(a.Ztilde != b.Ztilde);
  // Ztilde stream does not depend on how A was produced.
  cfg.fixed_a_seed.reset();
  const auto c = draw_realization(cfg, 100);
  CHECK(a.Ztilde == c.Ztilde);
}

TEST_CASE("i.i.d. channel entries at c=1 have unit variance") {
  const auto cfg = make_cfg(24, 4, 1.0, 10.0);
  double sum = 0.0;
  long count = 0;
  for (int t = 0; t < 400; ++t) {
    const auto real = draw_realization(cfg, trial_seed(9, t));
    sum += real.H.squaredNorm();
    count += real.H.size();
  }
  CHECK(sum / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Gram diagonal mean 1, off-diagonal second moment 1/(cM)") {
  const auto cfg = make_cfg(32, 4, 0.5, 10.0);
  const double cm = 16.0;
  double diag_sum = 0.0, off_sum = 0.0;
  long diag_n = 0, off_n = 0;
  for (int t = 0; t < 10000; ++t) {
    const Eigen::MatrixXcd G = draw_gram(cfg, trial_seed(31, t));
    for (int i = 0; i < 4; ++i) {
      diag_sum += G(i, i).real();
      ++diag_n;
      for (int j = 0; j < 4; ++j) {
        if (i != j) {
          off_sum += std::norm(G(i, j));
          ++off_n;
        }
      }
    }
  }
  CHECK(diag_sum / diag_n == doctest::Approx(1.0).epsilon(0.03));
  CHECK(off_sum / off_n == doctest::Approx(1.0 / cm).epsilon(0.03));
}

TEST_CASE("empirical spectrum stays near the asymptotic support") {
  const auto cfg = make_cfg(400, 40, 0.5, 10.0);
  const MpEdges edges = mp_edges(40.0 / 200.0);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd G = draw_gram(cfg, trial_seed(17, t));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G,
                                                       Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > edges.a_bar * 0.95);
    CHECK(es.eigenvalues().maxCoeff() < edges.b_bar * 1.05);
  }
}

TEST_CASE("gram_offdiag") {
  SUBCASE("identity Gram has no off-diagonal energy") {
    CHECK(gram_offdiag(Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);
  }
  SUBCASE("K=2 Hermitian symmetry gives equal entries") {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(2, 2);
    G(0, 1) = std::complex<double>(0.3, -0.4);
    G(1, 0) = std::conj(G(0, 1));
    const Eigen::VectorXd e = gram_offdiag(G);
    CHECK(e(0) == doctest::Approx(0.25));
    CHECK(e(1) == doctest::Approx(0.25));
  }
  SUBCASE("random K=4 matches the brute-force double loop") {
    const Eigen::MatrixXcd G = oracles::random_gram(4, 16, 99);
    const Eigen::VectorXd a = gram_offdiag(G);
    const Eigen::VectorXd b = oracles::offdiag_energy_bruteforce(G);
    CHECK((a - b).norm() < 1e-13);
  }
}
