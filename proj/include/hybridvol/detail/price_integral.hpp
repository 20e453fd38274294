#pragma once

#include <string>

#include "hybridvol/heston.hpp"
#include "hybridvol/quadrature.hpp"

namespace hybridvol::detail {

// Turns the real-line integral of a conjugate-symmetric price integrand into
// a price: base + Re(integral). Throws NumericalError when the quadrature
// did not converge or the imaginary residual exceeds 10 error estimates
// (plus a rounding floor relative to `scale`).
PricingResult price_from_integral(const QuadratureResult& q, double base,
                                  double scale, const std::string& what);

std::string describe(const QuadratureResult& q);

// Throws NumericalError if price < -(10 * max(error, abs_tol)).
void check_not_negative(double price, double error,
                        const QuadratureConfig& cfg, const std::string& what);

}  // namespace hybridvol::detail
