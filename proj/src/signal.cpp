// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/signal.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

double chirp(double t)
{
  return std::sin(t * t / 10.0);
}

InputSignal InputSignal::make_chirp(Eigen::Index inputs)
{
  if (inputs < 1)
  {
    throw DomainError("input signal needs at least one input");
  }
  return {Kind::chirp, inputs};
}

InputSignal InputSignal::make_zero(Eigen::Index inputs)
{
  if (inputs < 1)
  {
    throw DomainError("input signal needs at least one input");
  }
  return {Kind::zero, inputs};
}

InputSignal InputSignal::make_table(std::vector<double> times, std::vector<double> values,
                                    Eigen::Index inputs)
{
  if (inputs < 1)
  {
    throw DomainError("input signal needs at least one input");
  }
  if (times.empty() || times.size() != values.size())
  {
    throw DomainError(fmt::format("input table needs matching nonempty columns (got {} and {})",
                                  times.size(), values.size()));
  }
  for (std::size_t i = 0; i < times.size(); i++)
  {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i]) ||
        (i > 0 && !(times[i] > times[i - 1])))
    {
      throw DomainError(fmt::format("input table row {} is not finite and increasing", i));
    }
  }
  InputSignal sig(Kind::table, inputs);
  sig.times_ = std::make_shared<const std::vector<double>>(std::move(times));
  sig.values_ = std::make_shared<const std::vector<double>>(std::move(values));
  return sig;
}

double InputSignal::scalar(double t) const
{
  switch (kind_)
  {
    case Kind::chirp:
      return chirp(t);
    case Kind::zero:
      return 0.0;
    case Kind::table:
    {
      const auto &ts = *times_;
      const auto &vs = *values_;
      if (t <= ts.front())
      {
        return vs.front();
      }
      if (t >= ts.back())
      {
        return vs.back();
      }
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const auto j = static_cast<std::size_t>(it - ts.begin());
      const double a = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
      return (1.0 - a) * vs[j - 1] + a * vs[j];
    }
  }
  return 0.0;
}

void InputSignal::evaluate(double t, Eigen::Ref<Eigen::VectorXd> u) const
{
  u.setZero();
  u(0) = scalar(t);
}

Eigen::VectorXd InputSignal::operator()(double t) const
{
  Eigen::VectorXd u(inputs());
  evaluate(t, u);
  return u;
}

InputSignal InputSignal::in_first_mode(Eigen::Index s) const
{
  if (s < 1)
  {
    throw DomainError("in_first_mode needs s >= 1");
  }
  InputSignal lifted = *this;
  lifted.modes_ = modes_ * s;
  return lifted;
}

}  // namespace sgph
