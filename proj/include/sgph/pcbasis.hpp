// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_PCBASIS_HPP
#define SGPH_PCBASIS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>
#include <Eigen/Core>

namespace sgph
{

// Box of independent uniformly distributed parameters. All polynomial chaos
// machinery works in standardized coordinates xi in [-1,1]^q, mapped to
// physical values by mu_k = center_k + half_width_k * xi_k.
//
// A degenerate interval (lower == upper) is accepted and represents a
// parameter fixed at that value; it is the one-point limit of the uniform law.
class ParameterDomain
{
public:
  ParameterDomain(std::vector<double> lower, std::vector<double> upper);

  int dimension() const { return static_cast<int>(lower_.size()); }
  double lower(int k) const { return lower_[k]; }
  double upper(int k) const { return upper_[k]; }
  double center(int k) const { return 0.5 * (lower_[k] + upper_[k]); }
  double half_width(int k) const { return 0.5 * (upper_[k] - lower_[k]); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }

  Eigen::VectorXd center() const;
  Eigen::VectorXd to_physical(const Eigen::Ref<const Eigen::VectorXd> &xi) const;
  Eigen::VectorXd to_standard(const Eigen::Ref<const Eigen::VectorXd> &mu) const;

  // Membership with a relative slack of rel_tol to absorb rounding in the
  // affine map at the box faces.
  bool contains(const Eigen::Ref<const Eigen::VectorXd> &mu, double rel_tol = 1e-12) const;

private:
  std::vector<double> lower_, upper_;
};

// Closed form (q+d)!/(q!d!). Throws DomainError if the value exceeds max_size
// (or overflows 64 bits).
std::size_t basis_size(int q, int d, std::size_t max_size);

// All multi-indices of total degree <= d in q variables, graded lexicographic:
// by total degree first, then lexicographically with the first variable most
// significant, i.e. within degree t the order is (t,0,..,0), (t-1,1,0,..), ...
// The first index is always (0,..,0).
class MultiIndexSet
{
public:
  static constexpr std::size_t default_max_size = 2'000'000;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  MultiIndexSet(int q, int d, std::size_t max_size = default_max_size);

  int dimension() const { return q_; }
  int degree() const { return d_; }
  std::size_t size() const { return size_; }
  std::span<const int> operator[](std::size_t i) const
  {
    return {data_.data() + i * static_cast<std::size_t>(q_), static_cast<std::size_t>(q_)};
  }
  int total_degree(std::size_t i) const;

  // Position of index i raised by one in variable k, or npos if that exceeds
  // the total degree.
  std::size_t raised(std::size_t i, int k) const { return raised_[i * q_ + k]; }
  // Position of index i lowered by one in variable k, or npos if entry k is 0.
  std::size_t lowered(std::size_t i, int k) const { return lowered_[i * q_ + k]; }

  // Position of an arbitrary multi-index, or npos.
  std::size_t find(std::span<const int> alpha) const;

private:
  int q_, d_;
  std::size_t size_;
  std::vector<int> data_;
  std::vector<std::size_t> raised_, lowered_;
};

MultiIndexSet build_index_set(int q, int d,
                              std::size_t max_size = MultiIndexSet::default_max_size);

// Orthonormal Legendre polynomials with respect to the density 1/2 on [-1,1]:
// p_n = sqrt(2n+1) P_n. Fills out[0..n_max].
void legendre_orthonormal(int n_max, double x, std::span<double> out);
double legendre_orthonormal(int n, double x);

// E[xi p_n(xi) p_{n+1}(xi)] = (n+1)/sqrt((2n+1)(2n+3)).
double legendre_coupling(int n);

// Total-degree product basis Phi_i(xi) = prod_k p_{alpha_i,k}(xi_k), with
// Phi_0 == 1. Immutable; safe to share between threads.
class PCBasis
{
public:
  PCBasis(ParameterDomain domain, int degree,
          std::size_t max_size = MultiIndexSet::default_max_size);

  const ParameterDomain &domain() const { return domain_; }
  const MultiIndexSet &index_set() const { return indices_; }
  int dimension() const { return indices_.dimension(); }
  int degree() const { return indices_.degree(); }
  std::size_t size() const { return indices_.size(); }

  // (Phi_0(xi), ..., Phi_{s-1}(xi)). xi must lie in [-1,1]^q; no clamping.
  Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd> &xi) const;
  void evaluate(const Eigen::Ref<const Eigen::VectorXd> &xi, Eigen::Ref<Eigen::VectorXd> out) const;

  // <Phi_i, Phi_j>, exactly the Kronecker delta.
  double pairing_constant(std::size_t i, std::size_t j) const { return i == j ? 1.0 : 0.0; }

  // E[xi_k Phi_i Phi_j]. Nonzero only if the multi-indices agree off k and
  // differ by one in position k.
  double linear_triple_product(int k, std::size_t i, std::size_t j) const;

private:
  ParameterDomain domain_;
  MultiIndexSet indices_;
};

}  // namespace sgph

#endif  // SGPH_PCBASIS_HPP
