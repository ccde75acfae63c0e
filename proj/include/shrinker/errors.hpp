#pragma once

#include <stdexcept>
#include <string>

namespace shrinker {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function or profile.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Profile value is non-positive where a positive warping function is required.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

/// Requested computation is not supported for the given input (e.g. off-axis ball centers).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver ran out of budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_lo, double best_hi, double best_value)
      : Error(what), bracket_lo(best_lo), bracket_hi(best_hi), best(best_value) {}
  double bracket_lo;
  double bracket_hi;
  double best;
};

/// Function vector does not satisfy the unit L2 constraint.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Discretization too coarse for the requested tolerance.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the range where the computation is valid.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation's contract.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Dimension outside the supported range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace shrinker
