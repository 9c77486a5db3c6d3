// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/paramodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

AffineMatrixFamily::AffineMatrixFamily(Eigen::MatrixXd constant, std::vector<Term> terms)
  : constant_(std::move(constant)), terms_(std::move(terms))
{
  for (const auto &t : terms_)
  {
    if (t.parameter < 0)
    {
      throw DomainError(fmt::format("negative parameter index {} in affine family", t.parameter));
    }
    if (t.matrix.rows() != constant_.rows() || t.matrix.cols() != constant_.cols())
    {
      throw DomainError(fmt::format(
          "affine family term for parameter {} is {}x{}, constant part is {}x{}", t.parameter,
          t.matrix.rows(), t.matrix.cols(), constant_.rows(), constant_.cols()));
    }
  }
}

int AffineMatrixFamily::max_parameter() const
{
  int k = -1;
  for (const auto &t : terms_)
  {
    k = std::max(k, t.parameter);
  }
  return k;
}

Eigen::MatrixXd AffineMatrixFamily::evaluate(const Eigen::Ref<const Eigen::VectorXd> &mu) const
{
  Eigen::MatrixXd A = constant_;
  for (const auto &t : terms_)
  {
    A += mu(t.parameter) * t.matrix;
  }
  return A;
}

AffineMatrixFamily AffineMatrixFamily::transpose() const
{
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto &t : terms_)
  {
    terms.push_back({t.parameter, t.matrix.transpose()});
  }
  return AffineMatrixFamily(constant_.transpose(), std::move(terms));
}

Eigen::MatrixXd eval_family(const AffineMatrixFamily &family, const ParameterDomain &domain,
                            const Eigen::Ref<const Eigen::VectorXd> &mu)
{
  if (family.max_parameter() >= domain.dimension())
  {
    throw DomainError(fmt::format("affine family references parameter {} but the domain has {}",
                                  family.max_parameter(), domain.dimension()));
  }
  if (!domain.contains(mu))
  {
    throw DomainError("parameter point lies outside the parameter box");
  }
  return family.evaluate(mu);
}

void ConstantSecondOrderSystem::check_dimensions() const
{
  const Eigen::Index n = M.rows();
  auto square = [n](const Eigen::MatrixXd &A) { return A.rows() == n && A.cols() == n; };
  if (!square(M) || !square(D) || !square(K))
  {
    throw DomainError(fmt::format("second-order system: M, D, K must be {}x{} (got {}x{}, {}x{}, {}x{})",
                                  n, n, M.rows(), M.cols(), D.rows(), D.cols(), K.rows(), K.cols()));
  }
  if (B.rows() != n)
  {
    throw DomainError(fmt::format("second-order system: B has {} rows, expected {}", B.rows(), n));
  }
  if (F.cols() != n || G.cols() != n || F.rows() != G.rows())
  {
    throw DomainError(fmt::format("second-order system: F is {}x{}, G is {}x{}, expected p x {}",
                                  F.rows(), F.cols(), G.rows(), G.cols(), n));
  }
}

const SecondOrderCertificate &certify(ConstantSecondOrderSystem &sys, double tol)
{
  sys.check_dimensions();
  sys.certificate = SecondOrderCertificate{certify_definiteness(sys.M, tol),
                                           certify_definiteness(sys.D, tol),
                                           certify_definiteness(sys.K, tol)};
  return *sys.certificate;
}

void require_certified(const ConstantSecondOrderSystem &sys, std::string_view what)
{
  if (!sys.certificate)
  {
    throw CertificationError(fmt::format("{}: second-order system has no definiteness certificate",
                                         what));
  }
  const auto &c = *sys.certificate;
  if (!c.ok())
  {
    throw CertificationError(fmt::format(
        "{}: certificate failed (M {} lambda_min={:.3e}, D {} lambda_min={:.3e}, K {} "
        "lambda_min={:.3e})",
        what, to_string(c.mass.kind), c.mass.lambda_min, to_string(c.damping.kind),
        c.damping.lambda_min, to_string(c.stiffness.kind), c.stiffness.lambda_min));
  }
}

ParametricSecondOrderSystem::ParametricSecondOrderSystem(ParameterDomain domain,
                                                         AffineMatrixFamily M, AffineMatrixFamily D,
                                                         AffineMatrixFamily K, AffineMatrixFamily B,
                                                         AffineMatrixFamily F, AffineMatrixFamily G)
  : domain_(std::move(domain)), M_(std::move(M)), D_(std::move(D)), K_(std::move(K)),
    B_(std::move(B)), F_(std::move(F)), G_(std::move(G))
{
  const Eigen::Index n = M_.rows();
  for (const auto *fam : {&M_, &D_, &K_})
  {
    if (fam->rows() != n || fam->cols() != n)
    {
      throw DomainError("parametric system: M, D, K families must be square of equal size");
    }
  }
  if (B_.rows() != n || F_.cols() != n || G_.cols() != n || F_.rows() != G_.rows())
  {
    throw DomainError("parametric system: inconsistent B, F, G dimensions");
  }
  for (const auto *fam : {&M_, &D_, &K_, &B_, &F_, &G_})
  {
    if (fam->max_parameter() >= domain_.dimension())
    {
      throw DomainError(fmt::format("parametric system references parameter {} but q = {}",
                                    fam->max_parameter(), domain_.dimension()));
    }
  }
}

ConstantSecondOrderSystem ParametricSecondOrderSystem::evaluate(
    const Eigen::Ref<const Eigen::VectorXd> &mu) const
{
  if (!domain_.contains(mu))
  {
    throw DomainError("parameter point lies outside the parameter box");
  }
  ConstantSecondOrderSystem sys;
  sys.M = M_.evaluate(mu);
  sys.D = D_.evaluate(mu);
  sys.K = K_.evaluate(mu);
  sys.B = B_.evaluate(mu);
  sys.F = F_.evaluate(mu);
  sys.G = G_.evaluate(mu);
  return sys;
}

ConstantSecondOrderSystem ParametricSecondOrderSystem::evaluate_standard(
    const Eigen::Ref<const Eigen::VectorXd> &xi) const
{
  return evaluate(domain_.to_physical(xi));
}

ConstantSecondOrderSystem ParametricSecondOrderSystem::evaluate_center() const
{
  return evaluate(domain_.center());
}

VertexCheckResult check_vertex_definiteness(const ParametricSecondOrderSystem &sys, double tol,
                                            std::size_t samples, std::uint64_t seed)
{
  const int q = sys.domain().dimension();
  VertexCheckResult result;
  result.exhaustive = q <= 12;
  result.min_lambda_mass = result.min_lambda_damping = result.min_lambda_stiffness =
      std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const std::size_t count = result.exhaustive ? (std::size_t{1} << q) : samples;
  Eigen::VectorXd xi(q);
  for (std::size_t v = 0; v < count; v++)
  {
    for (int k = 0; k < q; k++)
    {
      const bool upper = result.exhaustive ? ((v >> k) & 1U) != 0 : coin(rng);
      xi(k) = upper ? 1.0 : -1.0;
    }
    auto c = sys.evaluate_standard(xi);
    const auto &cert = certify(c, tol);
    result.min_lambda_mass = std::min(result.min_lambda_mass, cert.mass.lambda_min);
    result.min_lambda_damping = std::min(result.min_lambda_damping, cert.damping.lambda_min);
    result.min_lambda_stiffness = std::min(result.min_lambda_stiffness, cert.stiffness.lambda_min);
    result.ok = result.ok && cert.ok();
    result.vertices_checked++;
  }
  return result;
}

ParameterDomain randomize_domain(std::span<const double> mean, double relative_halfwidth)
{
  if (!(relative_halfwidth > 0.0 && relative_halfwidth < 1.0))
  {
    throw DomainError(fmt::format("relative half-width must lie in (0, 1), got {}",
                                  relative_halfwidth));
  }
  std::vector<double> lower(mean.size()), upper(mean.size());
  for (std::size_t k = 0; k < mean.size(); k++)
  {
    if (!(mean[k] > 0.0))
    {
      throw DomainError(fmt::format("mean value of parameter {} must be positive, got {}", k,
                                    mean[k]));
    }
    lower[k] = (1.0 - relative_halfwidth) * mean[k];
    upper[k] = (1.0 + relative_halfwidth) * mean[k];
  }
  return ParameterDomain(std::move(lower), std::move(upper));
}

namespace
{

constexpr int msd_n = 4;

// Incidence of the six springs; -1 stands for the ground.
constexpr std::array<std::array<int, 2>, 6> msd_springs = {
  {{0, -1}, {0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}}};

struct MsdPattern
{
  enum Target
  {
    mass,
    damping,
    stiffness
  } target;
  Eigen::MatrixXd matrix;
};

MsdPattern msd_pattern(int parameter)
{
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(msd_n, msd_n);
  if (parameter < 4)
  {
    P(parameter, parameter) = 1.0;
    return {MsdPattern::mass, P};
  }
  if (parameter < 8)
  {
    P(parameter - 4, parameter - 4) = 1.0;
    return {MsdPattern::damping, P};
  }
  const auto [a, b] = msd_springs[parameter - 8];
  Eigen::VectorXd e = Eigen::VectorXd::Zero(msd_n);
  e(a) = 1.0;
  if (b >= 0)
  {
    e(b) = -1.0;
  }
  return {MsdPattern::stiffness, e * e.transpose()};
}

}  // namespace

ParametricSecondOrderSystem build_msd(std::span<const double> nominal, std::span<const int> random,
                                      const ParameterDomain &domain)
{
  if (nominal.size() != static_cast<std::size_t>(msd_parameter_count))
  {
    throw DomainError(fmt::format("mass-spring-damper model needs {} parameters, got {}",
                                  msd_parameter_count, nominal.size()));
  }
  if (static_cast<int>(random.size()) != domain.dimension())
  {
    throw DomainError(fmt::format("{} random parameters listed but the domain has dimension {}",
                                  random.size(), domain.dimension()));
  }
  std::array<int, msd_parameter_count> slot;
  slot.fill(-1);
  for (std::size_t k = 0; k < random.size(); k++)
  {
    const int p = random[k];
    if (p < 0 || p >= msd_parameter_count)
    {
      throw DomainError(fmt::format("random parameter index {} out of range", p));
    }
    if (slot[p] >= 0)
    {
      throw DomainError(fmt::format("parameter {} listed twice as random", msd_parameter_names[p]));
    }
    slot[p] = static_cast<int>(k);
    if (!(domain.lower(static_cast<int>(k)) > 0.0))
    {
      throw DomainError(fmt::format("parameter {} must be positive on its whole interval (lower "
                                    "bound {})",
                                    msd_parameter_names[p], domain.lower(static_cast<int>(k))));
    }
  }
  for (int p = 0; p < msd_parameter_count; p++)
  {
    if (slot[p] < 0 && !(nominal[p] > 0.0))
    {
      throw DomainError(fmt::format("parameter {} must be positive, got {}", msd_parameter_names[p],
                                    nominal[p]));
    }
  }

  Eigen::MatrixXd M0 = Eigen::MatrixXd::Zero(msd_n, msd_n), D0 = M0, K0 = M0;
  std::vector<AffineMatrixFamily::Term> Mt, Dt, Kt;
  for (int p = 0; p < msd_parameter_count; p++)
  {
    auto [target, P] = msd_pattern(p);
    Eigen::MatrixXd &constant = target == MsdPattern::mass      ? M0
                                : target == MsdPattern::damping ? D0
                                                                : K0;
    auto &terms = target == MsdPattern::mass ? Mt : target == MsdPattern::damping ? Dt : Kt;
    if (slot[p] >= 0)
    {
      terms.push_back({slot[p], std::move(P)});
    }
    else
    {
      constant += nominal[p] * P;
    }
  }

  // Input through the grounded spring k1 (parameter 8).
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(msd_n, 1);
  e1(0, 0) = 1.0;
  constexpr int k1 = 8;
  AffineMatrixFamily B = slot[k1] >= 0
                             ? AffineMatrixFamily(Eigen::MatrixXd::Zero(msd_n, 1), {{slot[k1], e1}})
                             : AffineMatrixFamily(nominal[k1] * e1);
  AffineMatrixFamily G = B.transpose();
  AffineMatrixFamily F(Eigen::MatrixXd::Zero(1, msd_n));

  return ParametricSecondOrderSystem(domain, AffineMatrixFamily(M0, std::move(Mt)),
                                     AffineMatrixFamily(D0, std::move(Dt)),
                                     AffineMatrixFamily(K0, std::move(Kt)), std::move(B),
                                     std::move(F), std::move(G));
}

ParametricSecondOrderSystem build_msd(const ParameterDomain &domain)
{
  if (domain.dimension() != msd_parameter_count)
  {
    throw DomainError(fmt::format("mass-spring-damper domain must have {} parameters, got {}",
                                  msd_parameter_count, domain.dimension()));
  }
  std::array<int, msd_parameter_count> all;
  for (int p = 0; p < msd_parameter_count; p++)
  {
    all[p] = p;
  }
  const Eigen::VectorXd center = domain.center();
  return build_msd(std::span<const double>(center.data(), msd_parameter_count), all, domain);
}

ConstantSecondOrderSystem msd_matrices(std::span<const double> params)
{
  if (params.size() != static_cast<std::size_t>(msd_parameter_count))
  {
    throw DomainError(fmt::format("mass-spring-damper model needs {} parameters, got {}",
                                  msd_parameter_count, params.size()));
  }
  std::vector<double> p(params.begin(), params.end());
  ParameterDomain point(p, p);
  std::array<int, msd_parameter_count> all;
  for (int k = 0; k < msd_parameter_count; k++)
  {
    all[k] = k;
  }
  return build_msd(params, all, point).evaluate_center();
}

}  // namespace sgph
