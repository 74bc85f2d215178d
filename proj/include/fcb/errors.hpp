#pragma once

#include <stdexcept>
#include <string>

namespace fcb {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a requested accuracy cannot be certified. Carries the best
/// value reached and its error estimate.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_value, double best_error)
      : std::runtime_error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

}  // namespace fcb
