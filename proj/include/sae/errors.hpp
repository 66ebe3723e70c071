#pragma once

#include <stdexcept>
#include <string>

namespace sae {

// Every library failure derives from sae::Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A boundary/interface parameter violates the self-adjointness condition.
class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

// Delta x = 0, e.g. a single-cell domain.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

// Spectral-flow check requested on a level that is not simple.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Pole of the matching function (e.g. cot at a multiple of pi).
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sae
