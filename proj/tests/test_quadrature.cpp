// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <vector>
#include <catch_amalgamated.hpp>
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"
#include "sgph/quadrature.hpp"

using namespace sgph;
using Catch::Approx;

namespace
{

// E[xi^a] for xi uniform on [-1,1].
double moment(int a)
{
  return a % 2 ? 0.0 : 1.0 / (a + 1);
}

double monomial_moment(const std::vector<int> &a)
{
  double m = 1.0;
  for (int e : a)
  {
    m *= moment(e);
  }
  return m;
}

double apply_rule(const QuadratureRule &rule, const std::vector<int> &a)
{
  return expectation(rule, [&](const Eigen::Ref<const Eigen::VectorXd> &xi) {
    double v = 1.0;
    for (std::size_t k = 0; k < a.size(); k++)
    {
      v *= std::pow(xi(static_cast<Eigen::Index>(k)), a[k]);
    }
    return v;
  });
}

}  // namespace

TEST_CASE("Gauss-Legendre nodes and weights", "[quadrature]")
{
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == Approx(-1.0 / std::sqrt(3.0)).margin(1e-15));
  CHECK(x[1] == Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
  CHECK(w[0] == Approx(1.0).margin(1e-15));
  gauss_legendre(3, x, w);
  CHECK(x[2] == Approx(std::sqrt(0.6)).margin(1e-15));
  CHECK(w[1] == Approx(8.0 / 9.0).margin(1e-15));
  for (int m : {1, 5, 12, 30})
  {
    gauss_legendre(m, x, w);
    double sum = 0.0;
    for (double wi : w)
    {
      sum += wi;
    }
    CHECK(sum == Approx(2.0).margin(1e-13));
    for (int i = 1; i < m; i++)
    {
      CHECK(x[i - 1] < x[i]);
    }
  }
}

TEST_CASE("tensor Gauss rule is exact to degree 2m-1 per axis", "[quadrature]")
{
  const QuadratureRule rule = gauss_tensor(2, 3);
  CHECK(rule.size() == 9);
  CHECK(rule.exact_degree == 5);
  CHECK(rule.weights.sum() == Approx(1.0).margin(1e-15));
  for (int a = 0; a <= 5; a++)
  {
    for (int b = 0; b <= 5; b++)
    {
      CHECK(apply_rule(rule, {a, b}) == Approx(monomial_moment({a, b})).margin(1e-14));
    }
  }
  CHECK(apply_rule(rule, {6, 0}) != Approx(monomial_moment({6, 0})).margin(1e-6));
  CHECK_THROWS_AS(gauss_tensor(10, 10, 1000), DomainError);
}

TEST_CASE("Stroud-5 node count and exactness", "[quadrature]")
{
  CHECK(stroud5(14).size() == 393);
  CHECK(stroud5(2).size() == 9);
  for (int q : {2, 3, 5})
  {
    const QuadratureRule rule = stroud5(q);
    CHECK(rule.size() == static_cast<std::size_t>(2 * q * q + 1));
    CHECK(rule.exact_degree == 5);
    CHECK(rule.weights.sum() == Approx(1.0).margin(1e-14));
    std::vector<std::vector<int>> monomials;
    std::vector<int> a(q, 0);
    // All monomials of total degree <= 5 in the first min(q,3) variables.
    for (int i = 0; i <= 5; i++)
    {
      for (int j = 0; i + j <= 5; j++)
      {
        for (int k = 0; i + j + k <= 5; k++)
        {
          if (q < 3 && k > 0)
          {
            continue;
          }
          std::fill(a.begin(), a.end(), 0);
          a[0] = i;
          a[1] = j;
          if (q >= 3)
          {
            a[2] = k;
          }
          CHECK(apply_rule(rule, a) == Approx(monomial_moment(a)).margin(1e-14));
        }
      }
    }
  }
  CHECK(stroud5(1).size() == 3);
}

TEST_CASE("expectation is independent of the thread count", "[quadrature]")
{
  const QuadratureRule rule = stroud5(6);
  const auto f = [](const Eigen::Ref<const Eigen::VectorXd> &xi) {
    return std::exp(0.3 * xi.sum()) * std::cos(xi(0) * xi(1));
  };
  const double reference = serial::expectation(rule, f);
  for (int threads : {1, 2, 3, 4})
  {
    set_threads(threads);
    CHECK(expectation(rule, f) == reference);
  }
  set_threads(1);
}

TEST_CASE("failing integrand reports the lowest node", "[quadrature]")
{
  const QuadratureRule rule = gauss_tensor(1, 4);
  set_threads(2);
  try
  {
    expectation(rule, [](const Eigen::Ref<const Eigen::VectorXd> &xi) -> double {
      if (xi(0) > -0.5)
      {
        throw std::runtime_error("boom");
      }
      return 1.0;
    });
    FAIL("no exception");
  }
  catch (const std::exception &e)
  {
    CHECK(std::string(e.what()).find("node 1") != std::string::npos);
  }
  set_threads(1);
}

TEST_CASE("pairwise summation", "[quadrature]")
{
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == Approx(100.0).margin(1e-12));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("rule CSV dump", "[quadrature]")
{
  std::ostringstream os;
  write_rule_csv(os, gauss_tensor(2, 1));
  CHECK(os.str() == "xi_1,xi_2,weight\n0,0,1\n");
}
