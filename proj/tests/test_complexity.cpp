// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "nsprec/complexity.hpp"

using namespace nsprec;

TEST_CASE("reference operation counts") {
  for (long long K : {2, 10, 64, 256}) {
    const long long K2 = K * K;
    CHECK(op_counts(PreconditionTag::INS, K).mults == K2);
    CHECK(op_counts(PreconditionTag::INS, K).divs == 0);
    CHECK(op_counts(PreconditionTag::CNS, K).mults == 4 * K2);
    CHECK(op_counts(PreconditionTag::CNS, K).divs == K);
    CHECK(op_counts(PreconditionTag::TNS, K).mults == 6 * K2);
    CHECK(op_counts(PreconditionTag::TNS, K).divs == K);
    CHECK(op_counts(PreconditionTag::ICNS, K).mults == 4 * K2);
    CHECK(op_counts(PreconditionTag::ICNS, K).divs == 0);
  }
  CHECK(op_counts(PreconditionTag::ICNS, 10).mults == 400);
  CHECK(op_counts(PreconditionTag::TNS, 10).mults == 600);
  CHECK(op_counts(PreconditionTag::TNS, 10).divs == 10);
  CHECK(op_counts(PreconditionTag::OrderedICNS, 10).mults == 500);
}

TEST_CASE("ordering pass costs exactly one extra column-norm sweep") {
  for (long long K : {2, 7, 10, 64, 256, 1000}) {
    const auto base = op_counts(PreconditionTag::ICNS, K);
    const auto ordered = op_counts(PreconditionTag::OrderedICNS, K);
    CHECK(ordered.mults - base.mults == K * K);
    CHECK(ordered.divs - base.divs == 0);
  }
}

TEST_CASE("only the diagonal family is flagged as extrapolated") {
  CHECK(op_counts(PreconditionTag::DNS, 10).extrapolated);
  CHECK(op_counts(PreconditionTag::DNS, 10).mults == 100);
  CHECK(op_counts(PreconditionTag::DNS, 10).divs == 10);
  for (auto tag : {PreconditionTag::INS, PreconditionTag::TNS,
                   PreconditionTag::CNS, PreconditionTag::ICNS,
                   PreconditionTag::OrderedICNS}) {
    CHECK_FALSE(op_counts(tag, 10).extrapolated);
  }
}

TEST_CASE("counts are leading-order only, small K rejected") {
  CHECK_THROWS_AS(op_counts(PreconditionTag::INS, 1), BadRange);
}
