// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_PARAMODEL_HPP
#define SGPH_PARAMODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>
#include <Eigen/Core>
#include "sgph/definiteness.hpp"
#include "sgph/pcbasis.hpp"

namespace sgph
{

// A(mu) = A0 + sum_t mu_{k_t} A_t. Parameter indices refer to the attached
// ParameterDomain; repeated indices are allowed and simply add up.
class AffineMatrixFamily
{
public:
  struct Term
  {
    int parameter;
    Eigen::MatrixXd matrix;
  };

  AffineMatrixFamily() = default;
  explicit AffineMatrixFamily(Eigen::MatrixXd constant, std::vector<Term> terms = {});

  Eigen::Index rows() const { return constant_.rows(); }
  Eigen::Index cols() const { return constant_.cols(); }
  const Eigen::MatrixXd &constant() const { return constant_; }
  const std::vector<Term> &terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  // Largest parameter index referenced, or -1.
  int max_parameter() const;

  // Unchecked evaluation; mu must have at least max_parameter()+1 entries.
  Eigen::MatrixXd evaluate(const Eigen::Ref<const Eigen::VectorXd> &mu) const;

  AffineMatrixFamily transpose() const;

private:
  Eigen::MatrixXd constant_;
  std::vector<Term> terms_;
};

// Evaluation with the support check: mu must lie in the parameter box.
Eigen::MatrixXd eval_family(const AffineMatrixFamily &family, const ParameterDomain &domain,
                            const Eigen::Ref<const Eigen::VectorXd> &mu);

struct SecondOrderCertificate
{
  DefinitenessCertificate mass, damping, stiffness;

  // M, K SPD and D SPSD (or SPD).
  bool ok() const { return mass.is_spd() && stiffness.is_spd() && damping.is_spsd(); }
};

// M p'' + D p' + K p = B u,  y = F p + G p'. Produced by evaluating a
// parametric system, by Galerkin assembly or by projection.
struct ConstantSecondOrderSystem
{
  Eigen::MatrixXd M, D, K;
  Eigen::MatrixXd B;     // n x inputs
  Eigen::MatrixXd F, G;  // outputs x n
  std::optional<SecondOrderCertificate> certificate;

  Eigen::Index dimension() const { return M.rows(); }
  Eigen::Index inputs() const { return B.cols(); }
  Eigen::Index outputs() const { return F.rows(); }

  // Throws DomainError on inconsistent shapes.
  void check_dimensions() const;
};

// Computes and stores the definiteness certificate. Does not throw on a
// failed certificate; callers decide.
const SecondOrderCertificate &certify(ConstantSecondOrderSystem &sys, double tol = 1e-10);

// Throws CertificationError unless sys carries a passing certificate.
void require_certified(const ConstantSecondOrderSystem &sys, std::string_view what);

class ParametricSecondOrderSystem
{
public:
  ParametricSecondOrderSystem(ParameterDomain domain, AffineMatrixFamily M, AffineMatrixFamily D,
                              AffineMatrixFamily K, AffineMatrixFamily B, AffineMatrixFamily F,
                              AffineMatrixFamily G);

  const ParameterDomain &domain() const { return domain_; }
  const AffineMatrixFamily &M() const { return M_; }
  const AffineMatrixFamily &D() const { return D_; }
  const AffineMatrixFamily &K() const { return K_; }
  const AffineMatrixFamily &B() const { return B_; }
  const AffineMatrixFamily &F() const { return F_; }
  const AffineMatrixFamily &G() const { return G_; }

  Eigen::Index dimension() const { return M_.rows(); }
  Eigen::Index inputs() const { return B_.cols(); }
  Eigen::Index outputs() const { return F_.rows(); }

  // Checked evaluation at a physical parameter point (no certificate).
  ConstantSecondOrderSystem evaluate(const Eigen::Ref<const Eigen::VectorXd> &mu) const;
  // Evaluation at mu(xi) for xi in [-1,1]^q.
  ConstantSecondOrderSystem evaluate_standard(const Eigen::Ref<const Eigen::VectorXd> &xi) const;
  ConstantSecondOrderSystem evaluate_center() const;

private:
  ParameterDomain domain_;
  AffineMatrixFamily M_, D_, K_, B_, F_, G_;
};

struct VertexCheckResult
{
  std::size_t vertices_checked = 0;
  bool exhaustive = false;
  bool ok = true;
  double min_lambda_mass = 0.0, min_lambda_damping = 0.0, min_lambda_stiffness = 0.0;
};

// Definiteness of M, K (SPD) and D (SPSD) on the vertices of the parameter
// box: all 2^q vertices when q <= 12, otherwise `samples` random vertices.
// For affine families this is equivalent to checking the whole box.
VertexCheckResult check_vertex_definiteness(const ParametricSecondOrderSystem &sys,
                                            double tol = 1e-10, std::size_t samples = 1000,
                                            std::uint64_t seed = 1);

// Mass-spring-damper example with four masses: springs k1 (ground-m1), k2
// (m1-m2), k3 (m2-m3), k4 (m3-m4), k5 (m1-m3), k6 (m2-m4); damper d_i from
// mass i to ground. The input is a base excitation through k1, B = k1 e_1,
// and the port-Hamiltonian output is F = 0, G = B^T (k1 times the velocity
// of the bottom mass).
inline constexpr int msd_parameter_count = 14;
inline constexpr std::array<std::string_view, msd_parameter_count> msd_parameter_names = {
  "m1", "m2", "m3", "m4", "d1", "d2", "d3", "d4", "k1", "k2", "k3", "k4", "k5", "k6"};

// Default nominal values (masses, dampers, springs).
inline constexpr std::array<double, msd_parameter_count> msd_default_means = {
  1.0, 1.0, 1.5, 2.0, 2.0, 4.0, 4.0, 4.0, 10.0, 20.0, 60.0, 40.0, 20.0, 60.0};

// lower = (1 - h) mean, upper = (1 + h) mean.
ParameterDomain randomize_domain(std::span<const double> mean, double relative_halfwidth);

// All 14 physical parameters random on `domain` (q = 14, in the order of
// msd_parameter_names).
ParametricSecondOrderSystem build_msd(const ParameterDomain &domain);

// Only the listed parameters are random (domain dimension = random.size(),
// in the listed order); the rest are fixed at `nominal`.
ParametricSecondOrderSystem build_msd(std::span<const double> nominal, std::span<const int> random,
                                      const ParameterDomain &domain);

// Deterministic evaluation of the MSD matrices at 14 parameter values.
ConstantSecondOrderSystem msd_matrices(std::span<const double> params);

}  // namespace sgph

#endif  // SGPH_PARAMODEL_HPP
