#pragma once

#include <stdexcept>
#include <string>

namespace hybridvol {

// Invalid model, contract or configuration input.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not produce a trustworthy number: quadrature did not
// converge, an integrand returned NaN/Inf, or an internal consistency check
// (imaginary residual, negative price) failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace detail
}  // namespace hybridvol
