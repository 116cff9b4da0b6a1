// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_ERROR_HPP
#define CAVDDM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cavddm
{

// Base class for every failure of a numerical operation. Invalid arguments
// (violated preconditions) are reported with std::invalid_argument instead.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A symbol was evaluated on one of its analytic poles.
class PoleHit : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

// A denominator of the convergence radius vanishes.
class IllPosed : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

class PrecisionExhausted : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

class RootFindingFailed : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

class DegeneratePole : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

// The 2x2 boundary system of a subdomain is singular. Carries the offending
// mode and subdomain so that callers can report them.
class SingularSubproblem : public NumericalError
{
public:
  SingularSubproblem(const std::string &what, int mode, int subdomain)
    : NumericalError(what), mode_(mode), subdomain_(subdomain)
  {
  }
  int Mode() const { return mode_; }
  int Subdomain() const { return subdomain_; }

private:
  int mode_;
  int subdomain_;
};

// k^2 is (numerically) an eigenvalue of the cavity.
class ResonantConfig : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

class ZeroReference : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

class QRNoConvergence : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

}  // namespace cavddm

#endif  // CAVDDM_ERROR_HPP
