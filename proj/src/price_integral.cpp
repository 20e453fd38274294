#include "hybridvol/detail/price_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hybridvol/errors.hpp"

namespace hybridvol::detail {

std::string describe(const QuadratureResult& q) {
  std::ostringstream s;
  s.precision(6);
  s << "value=" << q.value << " error_estimate=" << q.error_estimate
    << " evaluations=" << q.evaluations
    << " converged=" << (q.converged ? "true" : "false");
  return s.str();
}

PricingResult price_from_integral(const QuadratureResult& q, double base,
                                  double scale, const std::string& what) {
  if (!q.converged) {
    throw NumericalError(what + ": quadrature did not converge (" +
                         describe(q) + ")");
  }
  const double rounding =
      64.0 * std::numeric_limits<double>::epsilon() * std::abs(scale);
  const double residual = std::abs(q.value.imag());
  if (residual > 10.0 * q.error_estimate + rounding) {
    throw NumericalError(what + ": imaginary residual too large (" +
                         describe(q) + ")");
  }
  PricingResult r;
  r.price = base + q.value.real();
  r.error_estimate = q.error_estimate;
  r.evaluations = q.evaluations;
  r.imag_residual = residual;
  return r;
}

void check_not_negative(double price, double error,
                        const QuadratureConfig& cfg, const std::string& what) {
  if (price < -10.0 * std::max(error, cfg.abs_tol)) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": negative price " << price << " (error estimate " << error
      << ")";
    throw NumericalError(s.str());
  }
}

}  // namespace hybridvol::detail
