// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nsprec/precondition.hpp"
#include "oracles.hpp"

using namespace nsprec;

TEST_CASE("mp_edges") {
  SUBCASE("direct evaluation at r_eff = 1/3") {
    const MpEdges e = mp_edges(1.0 / 3.0);
    const double s = std::sqrt(1.0 / 3.0);
    CHECK(e.a_bar == doctest::Approx((1 - s) * (1 - s)).epsilon(1e-15));
    CHECK(e.b_bar == doctest::Approx((1 + s) * (1 + s)).epsilon(1e-15));
    CHECK(e.a_bar == doctest::Approx(0.178633).epsilon(1e-5));
    CHECK(e.b_bar == doctest::Approx(2.488034).epsilon(1e-5));
  }
  SUBCASE("exact quarter point") {
    const MpEdges e = mp_edges(0.25);
    CHECK(e.a_bar == 0.25);
    CHECK(e.b_bar == 2.25);
  }
  SUBCASE("vanishing loading collapses to 1") {
    const MpEdges e = mp_edges(1e-12);
    CHECK(e.a_bar == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(e.b_bar == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("range errors") {
    CHECK_THROWS_AS(mp_edges(0.0), BadRange);
    CHECK_THROWS_AS(mp_edges(1.5), BadRange);
    CHECK_THROWS_AS(mp_edges(-0.1), BadRange);
  }
}

TEST_CASE("omega_star equals 1 + K/(cM) to 1e-12") {
  CHECK(std::abs(omega_star(60, 10, 0.5) - (1.0 + 10.0 / 30.0)) < 1e-12);
  CHECK(std::abs(omega_star(100, 10, 0.5) - 1.2) < 1e-12);
  for (int M : {16, 50, 128, 1000}) {
    for (int K : {1, 4, 10}) {
      for (double c : {0.25, 0.5, 1.0}) {
        if (K > c * M) continue;
        CHECK(std::abs(omega_star(M, K, c) - (1.0 + K / (c * M))) < 1e-12);
      }
    }
  }
}

TEST_CASE("build_precondition INS is a scaled identity") {
  const Eigen::MatrixXcd G = oracles::random_gram(3, 12, 1);
  const auto pm = build_precondition(PreconditionKind::ins(1.3), G);
  CHECK((pm.D - 1.3 * Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
  CHECK((pm.D_inv - (1.0 / 1.3) * Eigen::MatrixXcd::Identity(3, 3)).norm() ==
        0.0);
}

TEST_CASE("build_precondition ICNS hand example") {
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(2, 2);
  G(1, 0) = 1.0;
  G(0, 1) = 1.0;
  const auto pm = build_precondition(PreconditionKind::icns(2.0), G);
  Eigen::MatrixXcd D_expect(2, 2), Dinv_expect(2, 2);
  D_expect << 2, 0, 1, 2;
  Dinv_expect << 0.5, 0, -0.25, 0.5;
  CHECK((pm.D - D_expect).norm() == 0.0);
  CHECK((pm.D_inv - Dinv_expect).norm() == 0.0);
}

TEST_CASE("ordered column selection follows the off-diagonal energy") {
  // Middle column dominated by design.
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(3, 3);
  G(0, 1) = std::complex<double>(0.9, 0.1);
  G(1, 0) = std::conj(G(0, 1));
  G(2, 1) = std::complex<double>(0.5, -0.2);
  G(1, 2) = std::conj(G(2, 1));
  const auto pm =
      build_precondition(PreconditionKind::ordered_icns(1.5), G);
  const Eigen::VectorXd energy = oracles::offdiag_energy_bruteforce(G);
  CHECK(energy(1) > energy(0));
  CHECK(energy(1) > energy(2));
  REQUIRE(pm.selected_column.has_value());
  CHECK(*pm.selected_column == 1);
  // Off-diagonal entries live only in the selected column; its diagonal
  // entry is omega.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      if (j != 1) CHECK(pm.D(i, j) == std::complex<double>(0, 0));
    }
  }
  CHECK(pm.D(1, 1) == std::complex<double>(1.5, 0));
}

TEST_CASE("ordered selection is scale-invariant and ties break low") {
  const Eigen::MatrixXcd G = oracles::random_gram(6, 24, 8);
  const auto a = build_precondition(PreconditionKind::ordered_icns(1.2), G);
  const auto b =
      build_precondition(PreconditionKind::ordered_icns(1.2), 7.5 * G);
  CHECK(*a.selected_column == *b.selected_column);

  // Columns 0 and 1 carry identical energy, column 2 none.
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Identity(3, 3);
  T(0, 1) = 0.4;
  T(1, 0) = 0.4;
  const auto tie = build_precondition(PreconditionKind::ordered_icns(1.1), T);
  CHECK(*tie.selected_column == 0);

  const auto all_tie =
      build_precondition(PreconditionKind::ordered_icns(1.1),
                         Eigen::MatrixXcd::Identity(4, 4));
  CHECK(*all_tie.selected_column == 0);
}

TEST_CASE("omega is required exactly where it is meaningful") {
  const Eigen::MatrixXcd G = oracles::random_gram(3, 12, 2);
  CHECK_THROWS_AS(build_precondition({PreconditionTag::INS}, G), BadRange);
  CHECK_THROWS_AS(build_precondition({PreconditionTag::ICNS, -1.0}, G),
                  BadRange);
  CHECK_THROWS_AS(build_precondition({PreconditionTag::DNS, 1.2}, G),
                  BadRange);
  CHECK_THROWS_AS(build_precondition({PreconditionTag::TNS, 1.2}, G),
                  BadRange);
}

TEST_CASE("invert_precondition closed forms") {
  SUBCASE("ICNS K=1") {
    const Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(1, 1);
    const auto pm = build_precondition(PreconditionKind::icns(1.0), G);
    CHECK(pm.D(0, 0) == std::complex<double>(1, 0));
    CHECK(pm.D_inv(0, 0) == std::complex<double>(1, 0));
  }
  SUBCASE("CNS on the identity Gram") {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(4, 4);
    const auto pm = build_precondition(PreconditionKind::cns(), I);
    CHECK((pm.D - I).norm() == 0.0);
    CHECK((pm.D_inv - I).norm() == 0.0);
  }
  SUBCASE("TNS matches a dense solve on a diagonally dominant system") {
    Eigen::MatrixXcd G = oracles::random_gram(5, 20, 3);
    G += 2.0 * Eigen::MatrixXcd::Identity(5, 5);
    const auto pm = build_precondition(PreconditionKind::tns(), G);
    CHECK((pm.D_inv - oracles::dense_inverse(pm.D)).norm() < 1e-10);
  }
  SUBCASE("zero pivot is rejected") {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Identity(3, 3);
    D(1, 1) = 0.0;
    CHECK_THROWS_AS(invert_precondition(PreconditionKind::dns(), D),
                    SingularPrecondition);
    CHECK_THROWS_AS(invert_precondition(PreconditionKind::tns(), D),
                    SingularPrecondition);
  }
}

TEST_CASE("inverse identity holds for every family on random PSD draws") {
  for (int K : {2, 5, 16, 32}) {
    const double w = omega_star(4 * K, K, 1.0);
    for (int d = 0; d < 25; ++d) {
      const Eigen::MatrixXcd G = oracles::random_gram(K, 4 * K, 1000 + d);
      const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(K, K);
      for (const auto& kind :
           {PreconditionKind::ins(w), PreconditionKind::dns(),
            PreconditionKind::tns(), PreconditionKind::cns(),
            PreconditionKind::icns(w), PreconditionKind::ordered_icns(w)}) {
        const auto pm = build_precondition(kind, G);
        CHECK((pm.D * pm.D_inv - I).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("single-column matrices square to exactly zero") {
  const Eigen::MatrixXcd G = oracles::random_gram(8, 32, 4);
  const double w = 1.25;
  for (const auto& kind :
       {PreconditionKind::icns(w), PreconditionKind::ordered_icns(w)}) {
    const auto pm = build_precondition(kind, G);
    const Eigen::MatrixXcd C =
        pm.D - w * Eigen::MatrixXcd::Identity(8, 8);
    CHECK((C * C).norm() == 0.0);
  }
}

TEST_CASE("spectral_check") {
  SUBCASE("zero residual when D equals G") {
    const Eigen::MatrixXcd G = oracles::random_gram(4, 16, 5);
    const Eigen::MatrixXcd D_inv = oracles::dense_inverse(G);
    CHECK(spectral_check(D_inv, G) < 1e-7);
  }
  SUBCASE("D = 2G gives exactly one half") {
    const Eigen::MatrixXcd G = oracles::random_gram(4, 16, 6);
    const Eigen::MatrixXcd D_inv = oracles::dense_inverse(2.0 * G);
    CHECK(spectral_check(D_inv, G) == doctest::Approx(0.5).epsilon(1e-7));
  }
  SUBCASE("INS at the optimal relaxation approaches the edge ratio") {
    // Large i.i.d. draw: the iteration-matrix norm approaches
    // (b-a)/(b+a) = 2 sqrt(r)/(1+r).
    const Eigen::MatrixXcd G = oracles::random_gram(40, 400, 7);
    const double w = omega_star(400, 40, 1.0);
    const auto pm = build_precondition(PreconditionKind::ins(w), G);
    const double predicted = 2.0 * std::sqrt(0.1) / 1.1;
    CHECK(spectral_check(pm.D_inv, G) ==
          doctest::Approx(predicted).epsilon(0.10));
  }
}
