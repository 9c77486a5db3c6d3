// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_SIGNAL_HPP
#define SGPH_SIGNAL_HPP

#include <memory>
#include <vector>
#include <Eigen/Core>

namespace sgph
{

// sin(t^2 / 10)
double chirp(double t);

// Deterministic input u(t). A chirp or table drives input 0 only; all other
// inputs are zero. in_first_mode() lifts the signal to a stochastic Galerkin
// system: the stacked input (u_mode0, u_mode1, ...) carries u in mode 0 and
// zero in every higher mode.
class InputSignal
{
public:
  enum class Kind
  {
    chirp,
    zero,
    table
  };

  static InputSignal make_chirp(Eigen::Index inputs = 1);
  static InputSignal make_zero(Eigen::Index inputs = 1);
  // Piecewise-linear interpolation of (times, values); held constant outside
  // the table. times strictly increasing.
  static InputSignal make_table(std::vector<double> times, std::vector<double> values,
                                Eigen::Index inputs = 1);

  Kind kind() const { return kind_; }
  Eigen::Index inputs() const { return inputs_ * modes_; }

  // Scalar driving value of input 0 (mode 0).
  double scalar(double t) const;
  void evaluate(double t, Eigen::Ref<Eigen::VectorXd> u) const;
  Eigen::VectorXd operator()(double t) const;

  InputSignal in_first_mode(Eigen::Index s) const;

private:
  InputSignal(Kind kind, Eigen::Index inputs) : kind_(kind), inputs_(inputs) {}

  Kind kind_;
  Eigen::Index inputs_;
  Eigen::Index modes_ = 1;
  std::shared_ptr<const std::vector<double>> times_, values_;
};

}  // namespace sgph

#endif  // SGPH_SIGNAL_HPP
