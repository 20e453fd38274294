#pragma once

#include <complex>

namespace hybridvol::detail {

using Complex = std::complex<double>;

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z);

// log(1 + z) without cancellation for small |z| (principal branch).
Complex log1p(Complex z);

// Overflow-safe pieces of the reciprocal-hyperbolic factor
//   R = 1 / (cosh z + c sinh z),  Re z >= 0,
// evaluated through e^{-2z} so that nothing grows with |z|. `log_r` is the
// logarithm continued along the branch that stays continuous in z (it
// differs from the principal log of R by a multiple of 2 pi i once
// |Im z| exceeds pi).
struct ReciprocalHyperbolic {
  Complex r;            // 1 / (cosh z + c sinh z)
  Complex log_r;        // continuous log of r
  Complex r_over_sinh;  // r / sinh z
  Complex coth;         // cosh z / sinh z
};

ReciprocalHyperbolic reciprocal_hyperbolic(Complex z, Complex c);

// log E[exp(-s * integral_0^T X(t) dt)] for the square-root diffusion
//   dX = (kappa_theta - k X) dt + sigma sqrt(X) dW,  X(0) = x0,
// continued to complex mean-reversion k and complex s. With
// gamma = sqrt(k^2 + 2 sigma^2 s) it equals
//   -B x0 + (2 kappa_theta / sigma^2) log A,
//   B = 2 s sinh(gamma T / 2) / (gamma cosh(gamma T / 2) + k sinh(gamma T / 2)),
//   A = e^{k T / 2} / (cosh(gamma T / 2) + k / gamma sinh(gamma T / 2)),
// arranged so that no term subtracts two quantities of order 1/sigma^2.
// This single function generates both Heston log-characteristic functions
// and the CIR discount transforms. Requires sigma > 0.
Complex cir_log_laplace(Complex k, double kappa_theta, double sigma, double x0,
                        Complex s, double T);

}  // namespace hybridvol::detail
