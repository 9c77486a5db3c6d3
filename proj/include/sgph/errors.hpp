// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_ERRORS_HPP
#define SGPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgph
{

// Base of all library errors.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments or precondition violations detected at runtime (bad
// dimensions, points outside the parameter box, infeasible basis sizes).
class DomainError : public Error
{
public:
  using Error::Error;
};

// Malformed or inconsistent run configuration.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// A matrix failed a symmetry/definiteness certificate, or a structure check.
class CertificationError : public Error
{
public:
  using Error::Error;
};

// Time integration, factorization or Lyapunov solve failed.
class SolverError : public Error
{
public:
  using Error::Error;
};

}  // namespace sgph

#endif  // SGPH_ERRORS_HPP
