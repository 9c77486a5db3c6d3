// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_QUADRATURE_HPP
#define SGPH_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>
#include <Eigen/Core>

namespace sgph
{

// Cubature over [-1,1]^q for the uniform product density 2^-q. Nodes are
// stored column-wise; weights sum to one.
struct QuadratureRule
{
  Eigen::MatrixXd nodes;    // q x N
  Eigen::VectorXd weights;  // N
  int exact_degree = 0;     // total polynomial degree integrated exactly

  int dimension() const { return static_cast<int>(nodes.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(nodes.cols()); }
  auto node(std::size_t i) const { return nodes.col(static_cast<Eigen::Index>(i)); }
};

// m-point Gauss-Legendre nodes and weights on [-1,1] (weights sum to 2),
// ascending nodes.
void gauss_legendre(int m, std::vector<double> &nodes, std::vector<double> &weights);

// Tensor Gauss-Legendre rule with m points per axis. exact_degree is 2m-1
// (per axis, hence also in total degree).
QuadratureRule gauss_tensor(int q, int m, std::size_t node_budget = 5'000'000);

// Stroud's degree-5 rule with 2q^2+1 nodes: the center, the 2q points
// +-r e_k and the 2q(q-1) points +-r e_k +- r e_l (k < l), r = sqrt(3/5).
// q = 1 falls back to gauss_tensor(1, 3).
QuadratureRule stroud5(int q);

using ScalarIntegrand = std::function<double(const Eigen::Ref<const Eigen::VectorXd> &xi)>;

// sum_i w_i f(node_i). Node evaluations run concurrently; the weighted values
// are reduced by pairwise summation in node order, so the result does not
// depend on the thread count. A throwing integrand is reported with the
// lowest failing node index.
double expectation(const QuadratureRule &rule, const ScalarIntegrand &f);

// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

// CSV dump: columns xi_1..xi_q, weight.
void write_rule_csv(std::ostream &os, const QuadratureRule &rule);

namespace serial
{

double expectation(const QuadratureRule &rule, const ScalarIntegrand &f);

}  // namespace serial

}  // namespace sgph

#endif  // SGPH_QUADRATURE_HPP
