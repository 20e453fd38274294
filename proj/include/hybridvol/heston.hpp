#pragma once

#include <complex>
#include <cstdint>

#include "hybridvol/models.hpp"
#include "hybridvol/quadrature.hpp"

namespace hybridvol {

// Logreturn x_T = ln(S_T / S0) - mu T.
struct LogReturn {
  double value = 0.0;
};

// Price plus the diagnostics of the integral that produced it.
struct PricingResult {
  double price = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  double imag_residual = 0.0;
};

// Every function below reads HestonParams under option propagation: a
// non-zero lambda is first folded into (kappa, theta) by risk_neutral_map.

// omega(l) = (sigma/2) sqrt((kappa/sigma + i l rho)^2 + l (l - i)),
// principal branch. omega(0) = kappa / 2.
Complex omega_of_l(Complex l, const HestonParams& p);

// nu(l) = (sigma/2) sqrt((kappa/sigma + i l rho - rho)^2 + l (l + i)),
// i.e. omega(l + i).
Complex nu_of_l(Complex l, const HestonParams& p);

// N(l) = 1 / (cosh(omega T) + (kappa + i l rho sigma) / (2 omega) sinh(omega T)).
Complex big_n_of_l(double l, double T, const HestonParams& p);

// The closed-form building blocks of the vanilla price at one frequency l.
struct HestonKernelTerms {
  Complex omega;
  Complex nu;
  Complex big_n;
  Complex big_m;
  Complex theta_exp;    // Theta(l), built from nu and M
  Complex upsilon_exp;  // Upsilon(l), built from omega and N
  double a = 0.0;       // v0 + kappa theta T
  double x_e = 0.0;     // ln(K / S0)
};

HestonKernelTerms heston_kernel(double l, const VanillaOption& opt,
                                const HestonParams& p);

// log E[exp(-i l x_T)] = kappa a / sigma^2 + i rho a l / sigma + Upsilon(l),
// evaluated in cancellation-free form. Accepts complex l; at l + i it equals
// kappa a / sigma^2 + i rho a l / sigma - rho a / sigma + Theta(l).
Complex heston_log_cf(Complex l, double T, const HestonParams& p);

// Density of x_T at horizon T, by Fourier inversion over l.
double marginal_density(LogReturn x, double T, const HestonParams& p,
                        const QuadratureConfig& cfg = {});

// The single-integral call formula's integrand (including the i / (2 pi l)
// factor), at frequency l != 0, for constant rate r.
Complex heston_price_integrand(double l, const VanillaOption& opt,
                               const HestonParams& p, double r);

// Vanilla price under constant rate r: (S0 - K e^{-rT}) / 2 plus the real
// line integral of heston_price_integrand. Puts by parity.
PricingResult heston_price(const VanillaOption& opt, const HestonParams& p,
                           double r, const QuadratureConfig& cfg = {});

// heston_price(...).price; honours opt.kind.
double heston_call_price(const VanillaOption& opt, const HestonParams& p,
                         double r, const QuadratureConfig& cfg = {});

// e^{-rT} E[payoff] computed by integrating the put payoff against
// marginal_density (nested quadrature); calls by parity. Independent
// cross-check of heston_price.
PricingResult price_via_density(const VanillaOption& opt,
                                const HestonParams& p, double r,
                                const QuadratureConfig& cfg = {});

}  // namespace hybridvol
