#include "hybridvol/detail/cir_transform.hpp"

#include <cmath>

#include "hybridvol/errors.hpp"

namespace hybridvol::detail {

Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin,
          std::exp(x) * std::sin(y)};
}

Complex log1p(Complex z) {
  const Complex u = 1.0 + z;
  if (u == Complex(1.0, 0.0)) return z;
  return std::log(u) * (z / (u - 1.0));
}

ReciprocalHyperbolic reciprocal_hyperbolic(Complex z, Complex c) {
  const Complex e = std::exp(-2.0 * z);
  const Complex one_minus_e = -expm1(-2.0 * z);
  const Complex d = 0.5 * ((1.0 + c) + (1.0 - c) * e);
  ReciprocalHyperbolic h;
  h.r = std::exp(-z) / d;
  h.log_r = -z - std::log(d);
  h.r_over_sinh = 2.0 * e / (d * one_minus_e);
  h.coth = (1.0 + e) / one_minus_e;
  return h;
}

Complex cir_log_laplace(Complex k, double kappa_theta, double sigma, double x0,
                        Complex s, double T) {
  require(sigma > 0.0, "cir_log_laplace: sigma must be > 0");
  const double sigma2 = sigma * sigma;
  const Complex gamma = std::sqrt(k * k + 2.0 * sigma2 * s);
  const Complex e = std::exp(-gamma * T);
  const Complex one_minus_e = -expm1(-gamma * T);
  const Complex k_plus_gamma = k + gamma;

  const Complex b =
      2.0 * s * one_minus_e / (gamma * (1.0 + e) + k * one_minus_e);
  const Complex drift_part = -2.0 * kappa_theta * s * T / k_plus_gamma;
  const Complex log_part =
      -(2.0 * kappa_theta / sigma2) *
      log1p(-sigma2 * s * one_minus_e / (gamma * k_plus_gamma));
  return -b * x0 + drift_part + log_part;
}

}  // namespace hybridvol::detail
