// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>
#include <catch_amalgamated.hpp>
#include "sgph/csv.hpp"
#include "sgph/errors.hpp"

using namespace sgph;

TEST_CASE("doubles round-trip in shortest form", "[csv]")
{
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-300) == "1e-300");
  for (double v : {1.0 / 3.0, 2.0 / 7.0, 1e17 + 3.0, -4.2e-9})
  {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("CSV writer", "[csv]")
{
  std::ostringstream os;
  CsvWriter csv(os, {"t", "value"});
  csv.row({0.0, 1.5});
  csv.row({0.25, -2.0});
  CHECK(os.str() == "t,value\n0,1.5\n0.25,-2\n");
  CHECK_THROWS_AS(csv.row({1.0}), DomainError);
}

TEST_CASE("matrix dump", "[csv]")
{
  std::ostringstream os;
  Eigen::Matrix2d A;
  A << 1, 2, 3, 4.5;
  write_matrix_csv(os, A, "# ns=2 n=2 s=1");
  CHECK(os.str() == "# ns=2 n=2 s=1\n1,2\n3,4.5\n");
}
