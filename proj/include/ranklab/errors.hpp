#pragma once

#include <stdexcept>
#include <string>

namespace ranklab {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonPrimeCharacteristic : public Error {
  public:
    using Error::Error;
};

class UnsupportedOrder : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class AmbientMismatch : public Error {
  public:
    using Error::Error;
};

class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

class NoSuchConfiguration : public Error {
  public:
    using Error::Error;
};

class ParameterViolation : public Error {
  public:
    using Error::Error;
};

// Raised when a stated precondition of an analytic formula is not met.
class PreconditionViolated : public ParameterViolation {
  public:
    using ParameterViolation::ParameterViolation;
};

class NotACodeword : public Error {
  public:
    using Error::Error;
};

class ExcludedRegime : public Error {
  public:
    using Error::Error;
};

class AmbiguousRadius : public Error {
  public:
    using Error::Error;
};

class NoValidOutput : public Error {
  public:
    using Error::Error;
};

}  // namespace ranklab
