// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <fmt/format.h>
#include "sgph/csv.hpp"
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"

namespace sgph
{

void gauss_legendre(int m, std::vector<double> &nodes, std::vector<double> &weights)
{
  if (m < 1)
  {
    throw DomainError(fmt::format("Gauss-Legendre rule needs m >= 1 (got {})", m));
  }
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  // Newton iteration on P_m from the Chebyshev-like initial guess; roots are
  // symmetric so only half are computed.
  for (int i = 0; i < (m + 1) / 2; i++)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = x;
      for (int n = 1; n < m; n++)
      {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x)))
      {
        break;
      }
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int n = 1; n < m; n++)
    {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
  if (m % 2 == 1)
  {
    nodes[m / 2] = 0.0;
  }
}

QuadratureRule gauss_tensor(int q, int m, std::size_t node_budget)
{
  if (q < 1 || m < 1)
  {
    throw DomainError(fmt::format("gauss_tensor needs q >= 1 and m >= 1 (got q={}, m={})", q, m));
  }
  std::size_t count = 1;
  for (int k = 0; k < q; k++)
  {
    count *= static_cast<std::size_t>(m);
    if (count > node_budget)
    {
      throw DomainError(fmt::format("tensor rule with {}^{} nodes exceeds the node budget {}", m,
                                    q, node_budget));
    }
  }
  std::vector<double> x, w;
  gauss_legendre(m, x, w);

  QuadratureRule rule;
  rule.nodes.resize(q, static_cast<Eigen::Index>(count));
  rule.weights.resize(static_cast<Eigen::Index>(count));
  rule.exact_degree = 2 * m - 1;
  // Odometer over the per-axis index, last axis fastest.
  std::vector<int> digit(q, 0);
  for (std::size_t j = 0; j < count; j++)
  {
    double weight = 1.0;
    for (int k = 0; k < q; k++)
    {
      rule.nodes(k, static_cast<Eigen::Index>(j)) = x[digit[k]];
      weight *= 0.5 * w[digit[k]];
    }
    rule.weights(static_cast<Eigen::Index>(j)) = weight;
    for (int k = q - 1; k >= 0; k--)
    {
      if (++digit[k] < m)
      {
        break;
      }
      digit[k] = 0;
    }
  }
  return rule;
}

QuadratureRule stroud5(int q)
{
  if (q < 1)
  {
    throw DomainError(fmt::format("stroud5 needs q >= 1 (got {})", q));
  }
  if (q == 1)
  {
    return gauss_tensor(1, 3);
  }
  const double r = std::sqrt(0.6);
  const double n = q;
  // Weights normalized to the unit-mass density 2^-q.
  const double w_center = (25.0 * n * n - 115.0 * n + 162.0) / 162.0;
  const double w_axis = (70.0 - 25.0 * n) / 162.0;
  const double w_pair = 25.0 / 324.0;

  const auto count = static_cast<Eigen::Index>(2 * q * q + 1);
  QuadratureRule rule;
  rule.nodes = Eigen::MatrixXd::Zero(q, count);
  rule.weights.resize(count);
  rule.exact_degree = 5;

  Eigen::Index j = 0;
  rule.weights(j++) = w_center;
  for (int k = 0; k < q; k++)
  {
    for (double sign : {1.0, -1.0})
    {
      rule.nodes(k, j) = sign * r;
      rule.weights(j++) = w_axis;
    }
  }
  for (int k = 0; k < q; k++)
  {
    for (int l = k + 1; l < q; l++)
    {
      for (double sk : {1.0, -1.0})
      {
        for (double sl : {1.0, -1.0})
        {
          rule.nodes(k, j) = sk * r;
          rule.nodes(l, j) = sl * r;
          rule.weights(j++) = w_pair;
        }
      }
    }
  }
  return rule;
}

double pairwise_sum(std::span<const double> values)
{
  constexpr std::size_t block = 8;
  if (values.size() <= block)
  {
    double s = 0.0;
    for (double v : values)
    {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace
{

template <typename Loop>
double expectation_impl(const QuadratureRule &rule, const ScalarIntegrand &f, Loop &&loop)
{
  std::vector<double> terms(rule.size());
  loop(static_cast<std::ptrdiff_t>(rule.size()), [&](std::ptrdiff_t j) {
    try
    {
      terms[j] = rule.weights(j) * f(rule.nodes.col(j));
    }
    catch (const std::exception &e)
    {
      throw Error(fmt::format("integrand evaluation failed at quadrature node {}: {}", j, e.what()));
    }
  });
  return pairwise_sum(terms);
}

}  // namespace

double expectation(const QuadratureRule &rule, const ScalarIntegrand &f)
{
  return expectation_impl(rule, f, [](std::ptrdiff_t n, auto &&body) { parallel_for(n, body); });
}

namespace serial
{

double expectation(const QuadratureRule &rule, const ScalarIntegrand &f)
{
  return expectation_impl(rule, f, [](std::ptrdiff_t n, auto &&body) { serial_for(n, body); });
}

}  // namespace serial

void write_rule_csv(std::ostream &os, const QuadratureRule &rule)
{
  std::vector<std::string> header;
  for (int k = 0; k < rule.dimension(); k++)
  {
    header.push_back(fmt::format("xi_{}", k + 1));
  }
  header.emplace_back("weight");
  CsvWriter csv(os, header);
  std::vector<double> row(rule.dimension() + 1);
  for (std::size_t j = 0; j < rule.size(); j++)
  {
    for (int k = 0; k < rule.dimension(); k++)
    {
      row[k] = rule.nodes(k, static_cast<Eigen::Index>(j));
    }
    row.back() = rule.weights(static_cast<Eigen::Index>(j));
    csv.row(row);
  }
}

}  // namespace sgph
