#pragma once

#include <stdexcept>
#include <string>

namespace twobody {

/// Input outside the mathematical domain of an operation (eta <= 0, |x| > 1/2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A cot/tan argument of the Bethe equations sits on (or within 1e-13 of) a pole.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration failed: non-convergence, non-finite values or a pole crossing.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleCrossingError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Continuation could not advance; carries the last gamma reached.
class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string& what, double gamma)
      : std::runtime_error(what), failing_gamma(gamma) {}
  double failing_gamma;
};

/// The coefficient system has no null vector, or more than one.
class NullspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExtrapolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twobody
