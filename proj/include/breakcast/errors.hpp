#pragma once

#include <stdexcept>
#include <string>

namespace breakcast {

/// A parameter lies outside its documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An evaluation point fell inside the guard radius of a pole.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive integration exhausted its subdivision budget before meeting the
/// requested tolerance. Usually signals a singular or mis-parameterized spec.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A regression design was numerically degenerate and the caller asked for
/// an error instead of the zero-slope fallback.
class DegenerateSequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace breakcast
