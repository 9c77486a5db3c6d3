// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/pcbasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

ParameterDomain::ParameterDomain(std::vector<double> lower, std::vector<double> upper)
  : lower_(std::move(lower)), upper_(std::move(upper))
{
  if (lower_.empty())
  {
    throw DomainError("parameter domain needs at least one parameter");
  }
  if (lower_.size() != upper_.size())
  {
    throw DomainError(fmt::format("parameter domain bounds have different lengths ({} vs {})",
                                  lower_.size(), upper_.size()));
  }
  for (std::size_t k = 0; k < lower_.size(); k++)
  {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) || lower_[k] > upper_[k])
    {
      throw DomainError(fmt::format("invalid interval [{}, {}] for parameter {}", lower_[k],
                                    upper_[k], k));
    }
  }
}

Eigen::VectorXd ParameterDomain::center() const
{
  Eigen::VectorXd c(dimension());
  for (int k = 0; k < dimension(); k++)
  {
    c(k) = center(k);
  }
  return c;
}

Eigen::VectorXd ParameterDomain::to_physical(const Eigen::Ref<const Eigen::VectorXd> &xi) const
{
  if (xi.size() != dimension())
  {
    throw DomainError(fmt::format("standardized point has dimension {}, expected {}", xi.size(),
                                  dimension()));
  }
  Eigen::VectorXd mu(dimension());
  for (int k = 0; k < dimension(); k++)
  {
    mu(k) = center(k) + half_width(k) * xi(k);
  }
  return mu;
}

Eigen::VectorXd ParameterDomain::to_standard(const Eigen::Ref<const Eigen::VectorXd> &mu) const
{
  if (mu.size() != dimension())
  {
    throw DomainError(fmt::format("parameter point has dimension {}, expected {}", mu.size(),
                                  dimension()));
  }
  Eigen::VectorXd xi(dimension());
  for (int k = 0; k < dimension(); k++)
  {
    xi(k) = half_width(k) > 0.0 ? (mu(k) - center(k)) / half_width(k) : 0.0;
  }
  return xi;
}

bool ParameterDomain::contains(const Eigen::Ref<const Eigen::VectorXd> &mu, double rel_tol) const
{
  if (mu.size() != dimension())
  {
    return false;
  }
  for (int k = 0; k < dimension(); k++)
  {
    const double slack = rel_tol * std::max({1.0, std::abs(lower_[k]), std::abs(upper_[k])});
    if (!(mu(k) >= lower_[k] - slack && mu(k) <= upper_[k] + slack))
    {
      return false;
    }
  }
  return true;
}

std::size_t basis_size(int q, int d, std::size_t max_size)
{
  if (q < 1 || d < 0)
  {
    throw DomainError(fmt::format("basis needs q >= 1 and d >= 0 (got q={}, d={})", q, d));
  }
  // C(q+d, d) built as prod_{i=1..d} (q+i)/i; every partial product is an
  // exact binomial coefficient, so the division never truncates.
  std::uint64_t s = 1;
  for (int i = 1; i <= d; i++)
  {
    const auto factor = static_cast<std::uint64_t>(q + i);
    if (s > std::numeric_limits<std::uint64_t>::max() / factor)
    {
      throw DomainError(fmt::format("basis size for q={}, d={} overflows", q, d));
    }
    s = s * factor / static_cast<std::uint64_t>(i);
    if (s > max_size)
    {
      break;
    }
  }
  if (s > max_size)
  {
    throw DomainError(fmt::format("basis size for q={}, d={} exceeds the limit {}", q, d,
                                  max_size));
  }
  return static_cast<std::size_t>(s);
}

namespace
{

// Appends all q-tuples with entries summing to exactly `remaining`, first
// variable most significant and descending.
void enumerate_degree(int k, int remaining, std::vector<int> &current, std::vector<int> &out)
{
  const int q = static_cast<int>(current.size());
  if (k == q - 1)
  {
    current[k] = remaining;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int a = remaining; a >= 0; a--)
  {
    current[k] = a;
    enumerate_degree(k + 1, remaining - a, current, out);
  }
  current[k] = 0;
}

}  // namespace

MultiIndexSet::MultiIndexSet(int q, int d, std::size_t max_size)
  : q_(q), d_(d), size_(basis_size(q, d, max_size))
{
  data_.reserve(size_ * static_cast<std::size_t>(q_));
  std::vector<int> current(q_, 0);
  for (int t = 0; t <= d_; t++)
  {
    enumerate_degree(0, t, current, data_);
  }

  std::map<std::vector<int>, std::size_t> position;
  for (std::size_t i = 0; i < size_; i++)
  {
    auto alpha = (*this)[i];
    position.emplace(std::vector<int>(alpha.begin(), alpha.end()), i);
  }
  raised_.assign(size_ * static_cast<std::size_t>(q_), npos);
  lowered_.assign(size_ * static_cast<std::size_t>(q_), npos);
  std::vector<int> key(q_);
  for (std::size_t i = 0; i < size_; i++)
  {
    auto alpha = (*this)[i];
    if (total_degree(i) == d_)
    {
      continue;
    }
    for (int k = 0; k < q_; k++)
    {
      std::copy(alpha.begin(), alpha.end(), key.begin());
      key[k]++;
      const std::size_t j = position.at(key);
      raised_[i * q_ + k] = j;
      lowered_[j * q_ + k] = i;
    }
  }
}

int MultiIndexSet::total_degree(std::size_t i) const
{
  int t = 0;
  for (int a : (*this)[i])
  {
    t += a;
  }
  return t;
}

std::size_t MultiIndexSet::find(std::span<const int> alpha) const
{
  if (static_cast<int>(alpha.size()) != q_)
  {
    return npos;
  }
  // Walk up from the constant index one unit at a time.
  std::size_t i = 0;
  for (int k = 0; k < q_; k++)
  {
    if (alpha[k] < 0)
    {
      return npos;
    }
    for (int a = 0; a < alpha[k]; a++)
    {
      i = raised(i, k);
      if (i == npos)
      {
        return npos;
      }
    }
  }
  return i;
}

MultiIndexSet build_index_set(int q, int d, std::size_t max_size)
{
  return MultiIndexSet(q, d, max_size);
}

void legendre_orthonormal(int n_max, double x, std::span<double> out)
{
  // (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
  double p_prev = 1.0, p = x;
  out[0] = 1.0;
  if (n_max >= 1)
  {
    out[1] = std::sqrt(3.0) * x;
  }
  for (int n = 1; n < n_max; n++)
  {
    const double p_next = ((2.0 * n + 1.0) * x * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
    out[n + 1] = std::sqrt(2.0 * (n + 1) + 1.0) * p;
  }
}

double legendre_orthonormal(int n, double x)
{
  std::vector<double> values(n + 1);
  legendre_orthonormal(n, x, values);
  return values[n];
}

double legendre_coupling(int n)
{
  return (n + 1.0) / std::sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0));
}

PCBasis::PCBasis(ParameterDomain domain, int degree, std::size_t max_size)
  : domain_(std::move(domain)), indices_(domain_.dimension(), degree, max_size)
{
}

Eigen::VectorXd PCBasis::evaluate(const Eigen::Ref<const Eigen::VectorXd> &xi) const
{
  Eigen::VectorXd out(size());
  evaluate(xi, out);
  return out;
}

void PCBasis::evaluate(const Eigen::Ref<const Eigen::VectorXd> &xi,
                       Eigen::Ref<Eigen::VectorXd> out) const
{
  const int q = dimension(), d = degree();
  if (xi.size() != q || out.size() != static_cast<Eigen::Index>(size()))
  {
    throw DomainError("PCBasis::evaluate: dimension mismatch");
  }
  // Univariate table: value(k, n) = p_n(xi_k).
  Eigen::MatrixXd table(d + 1, q);
  for (int k = 0; k < q; k++)
  {
    legendre_orthonormal(d, xi(k), std::span<double>(table.col(k).data(), d + 1));
  }
  for (std::size_t i = 0; i < size(); i++)
  {
    auto alpha = indices_[i];
    double v = 1.0;
    for (int k = 0; k < q; k++)
    {
      if (alpha[k] != 0)
      {
        v *= table(alpha[k], k);
      }
    }
    out(static_cast<Eigen::Index>(i)) = v;
  }
}

double PCBasis::linear_triple_product(int k, std::size_t i, std::size_t j) const
{
  auto a = indices_[i];
  auto b = indices_[j];
  for (int l = 0; l < dimension(); l++)
  {
    if (l != k && a[l] != b[l])
    {
      return 0.0;
    }
  }
  if (std::abs(a[k] - b[k]) != 1)
  {
    return 0.0;
  }
  return legendre_coupling(std::min(a[k], b[k]));
}

}  // namespace sgph
