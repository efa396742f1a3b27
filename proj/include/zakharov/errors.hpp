#pragma once

#include <stdexcept>
#include <string>

namespace zakharov {

/// Numerical failure during a computation (blow-up, failed fit). Distinct from
/// std::invalid_argument, which signals a violated precondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the integrators when a norm exceeds the blow-up threshold or a
/// coefficient becomes non-finite.
class BlowUpError : public NumericalError {
 public:
  BlowUpError(const std::string& what, double last_good_time)
      : NumericalError(what), last_good_time_(last_good_time) {}
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace zakharov
