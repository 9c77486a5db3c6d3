// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>
#include "sgph/definiteness.hpp"

using namespace sgph;
using Catch::Approx;

TEST_CASE("classification of small matrices", "[definiteness]")
{
  Eigen::Matrix2d A;
  A << 2, -1, -1, 2;
  const auto c = certify_definiteness(A);
  CHECK(c.kind == Definiteness::spd);
  CHECK(c.lambda_min == Approx(1.0));
  CHECK(c.lambda_max == Approx(3.0));
  CHECK(c.is_spsd());

  A << 1, 1, 1, 1;
  CHECK(classify_definiteness(A) == Definiteness::spsd);
  A << 1, 2, 2, 1;
  CHECK(classify_definiteness(A) == Definiteness::indefinite);
  A << 1, 2, 0, 1;
  CHECK(classify_definiteness(A) == Definiteness::unsymmetric);
  CHECK(classify_definiteness(Eigen::Matrix2d::Zero()) == Definiteness::spsd);
}

TEST_CASE("tolerances are relative to the matrix scale", "[definiteness]")
{
  Eigen::Matrix2d A;
  A << 1e6, 0, 0, 1e-3;
  CHECK(classify_definiteness(A) == Definiteness::spd);
  A(1, 1) = 1e-7;
  CHECK(classify_definiteness(A) == Definiteness::spsd);
  A(1, 1) = 1e-5 * 1e-6;
  CHECK(classify_definiteness(A) == Definiteness::spsd);
  A(1, 1) = -1e-5 * 1e-6;
  CHECK(classify_definiteness(A) == Definiteness::spsd);
  A(1, 1) = -1e-3;
  CHECK(classify_definiteness(A) == Definiteness::indefinite);
}

TEST_CASE("skew residual", "[definiteness]")
{
  Eigen::Matrix3d S;
  S << 0, 1, -2, -1, 0, 3, 2, -3, 0;
  CHECK(skew_residual(S) == 0.0);
  S(0, 0) = 0.5;
  CHECK(skew_residual(S) == 1.0);
  CHECK(to_string(Definiteness::spsd) == "SPSD");
}
