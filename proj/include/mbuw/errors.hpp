#pragma once

#include <stdexcept>
#include <string>

namespace mbuw {

// Process exit codes used by the command-line tool. Every library error maps
// onto exactly one of these.
enum class ExitCode : int {
  ok = 0,
  input = 2,      // unreadable or malformed input, bad flags
  domain = 3,     // value outside the support or parameter space
  numerical = 4,  // non-convergence, singular or indefinite matrices
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ExitCode::input, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ExitCode::domain, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

class SingularInformation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteObjective : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MaxIterExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonPositiveCurvature : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mbuw
