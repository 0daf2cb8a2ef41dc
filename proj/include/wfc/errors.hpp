#pragma once

#include <stdexcept>
#include <string>

namespace wfc {

/// Raised when an input violates a documented precondition (bad material
/// constants, a load touching the crack tip, evaluation at a pole, ...).
/// std::domain_error is reused so callers can catch the standard type.
using input_error = std::domain_error;

/// Raised when an adaptive scheme exhausts its budget before reaching the
/// requested tolerance.  Carries the best estimate it got to.
class numerical_error : public std::runtime_error {
public:
  numerical_error(const std::string& what, double best_error)
      : std::runtime_error(what), best_error_(best_error) {}
  double best_error() const noexcept { return best_error_; }

private:
  double best_error_;
};

}  // namespace wfc
