#pragma once

#include <stdexcept>
#include <string>

namespace holevo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A state, distribution, channel or POVM failed validation on construction.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AllOutcomesNegligible : public Error {
 public:
  using Error::Error;
};

class NotIsometry : public Error {
 public:
  using Error::Error;
};

class InvalidLambda : public Error {
 public:
  using Error::Error;
};

}  // namespace holevo
