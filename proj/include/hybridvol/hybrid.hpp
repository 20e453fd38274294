#pragma once

#include <complex>

#include "hybridvol/heston.hpp"
#include "hybridvol/models.hpp"
#include "hybridvol/quadrature.hpp"

namespace hybridvol {

// Rate-side counterparts of the Heston kernel terms at frequency l.
struct RateKernelTerms {
  double a_r = 0.0;  // r0 + kappa_r theta_r T
  Complex nu_r;
  Complex omega_r;
  Complex big_m_r;
  Complex big_n_r;
  Complex theta_r_exp;
  Complex upsilon_r_exp;
};

// nu_r(l) = (sigma_r/2) sqrt(kappa_r^2 / sigma_r^2 + 2 i l)
Complex rate_nu(Complex l, const CirRateParams& rp);

// omega_r(l) = (sigma_r/2) sqrt(kappa_r^2 / sigma_r^2 + 2 (i l + 1)),
// equal to rate_nu(l - i).
Complex rate_omega(Complex l, const CirRateParams& rp);

// M_r = [cosh(nu_r T) + kappa_r / (2 nu_r) sinh(nu_r T)]^{-1}; N_r is the
// same expression with omega_r(l) in place of nu_r. Requires sigma_r > 0.
RateKernelTerms rate_kernel(double l, double T, const CirRateParams& rp);

// log E[exp(-s * integral_0^T r dt)]. At s = 1 + i l this is
// kappa_r a_r / sigma_r^2 + Upsilon_r(l); at s = i l it is
// kappa_r a_r / sigma_r^2 + Theta_r(l). Requires sigma_r > 0.
Complex rate_log_discount(Complex s, double T, const CirRateParams& rp);

// Zero-coupon bond E[exp(-integral_0^T r dt)] = exp(kappa_r a_r / sigma_r^2
// + Upsilon_r(0)). Throws ParameterError for sigma_r = 0.
double cir_bond_price(const CirRateParams& rp, double T);

// cir_bond_price, or exp(-T * deterministic_average_rate) when sigma_r = 0.
double discount_factor(const CirRateParams& rp, double T);

// Integrand of the stochastic-rate call formula (including i / (2 pi l)).
Complex hybrid_price_integrand(double l, const VanillaOption& opt,
                               const HestonParams& p, const CirRateParams& rp);

// Vanilla price with Heston volatility and an independent CIR short rate:
// (S0 - K P(0,T)) / 2 plus the real-line integral of hybrid_price_integrand.
// Puts by C - P = S0 - K P(0,T). For sigma_r = 0 the rate path is
// deterministic and the price is heston_price at its average rate.
PricingResult hybrid_price(const VanillaOption& opt, const HestonParams& p,
                           const CirRateParams& rp,
                           const QuadratureConfig& cfg = {});

double hybrid_call_price(const VanillaOption& opt, const HestonParams& p,
                         const CirRateParams& rp,
                         const QuadratureConfig& cfg = {});

}  // namespace hybridvol
