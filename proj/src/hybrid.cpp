#include "hybridvol/hybrid.hpp"

#include <cmath>
#include <numbers>

#include "hybridvol/detail/cir_transform.hpp"
#include "hybridvol/detail/price_integral.hpp"
#include "hybridvol/errors.hpp"

namespace hybridvol {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_noisy(const CirRateParams& rp, const char* what) {
  rp.validate();
  detail::require(rp.sigma_r > 0.0,
                  std::string(what) + ": sigma_r must be > 0");
}

Complex log_discount(Complex s, double T, const CirRateParams& rp) {
  return detail::cir_log_laplace(rp.kappa_r, rp.kappa_r * rp.theta_r,
                                 rp.sigma_r, rp.r0, s, T);
}

Complex log_cf(Complex l, double T, const HestonParams& p) {
  const Complex k = p.kappa + kI * l * (p.rho * p.sigma);
  const Complex s = 0.5 * l * (l - kI);
  return detail::cir_log_laplace(k, p.kappa * p.theta, p.sigma, p.v0, s, T);
}

// p must already be mapped to option propagation.
Complex integrand_mapped(double l, const VanillaOption& opt,
                         const HestonParams& p, const CirRateParams& rp,
                         double bond) {
  const double T = opt.maturity;
  const double x_e = std::log(opt.strike / opt.s0);
  const Complex asset =
      opt.s0 * std::exp(log_cf(l + kI, T, p) + log_discount(kI * l, T, rp));
  const Complex cash = opt.strike * std::exp(log_cf(l, T, p) +
                                             log_discount(1.0 + kI * l, T, rp));
  const Complex braced = opt.strike * bond - opt.s0 +
                         std::exp(kI * (l * x_e)) * (asset - cash);
  return kI * braced / (kTwoPi * l);
}

}  // namespace

Complex rate_nu(Complex l, const CirRateParams& rp) {
  rp.validate();
  return 0.5 * std::sqrt(rp.kappa_r * rp.kappa_r +
                         2.0 * rp.sigma_r * rp.sigma_r * (kI * l));
}

Complex rate_omega(Complex l, const CirRateParams& rp) {
  rp.validate();
  return 0.5 * std::sqrt(rp.kappa_r * rp.kappa_r +
                         2.0 * rp.sigma_r * rp.sigma_r * (kI * l + 1.0));
}

RateKernelTerms rate_kernel(double l, double T, const CirRateParams& rp) {
  require_noisy(rp, "rate_kernel");
  detail::require(T > 0.0, "rate_kernel: T must be > 0");
  const double sigma2 = rp.sigma_r * rp.sigma_r;
  const double kappa_theta = rp.kappa_r * rp.theta_r;

  RateKernelTerms t;
  t.a_r = rp.r0 + kappa_theta * T;
  t.nu_r = rate_nu(l, rp);
  t.omega_r = rate_omega(l, rp);
  const auto hm =
      detail::reciprocal_hyperbolic(t.nu_r * T, rp.kappa_r / (2.0 * t.nu_r));
  const auto hn = detail::reciprocal_hyperbolic(t.omega_r * T,
                                                rp.kappa_r / (2.0 * t.omega_r));
  t.big_m_r = hm.r;
  t.big_n_r = hn.r;
  t.theta_r_exp = 2.0 * t.nu_r * rp.r0 / sigma2 * (hm.r_over_sinh - hm.coth) +
                  2.0 * kappa_theta / sigma2 * hm.log_r;
  t.upsilon_r_exp =
      2.0 * t.omega_r * rp.r0 / sigma2 * (hn.r_over_sinh - hn.coth) +
      2.0 * kappa_theta / sigma2 * hn.log_r;
  return t;
}

Complex rate_log_discount(Complex s, double T, const CirRateParams& rp) {
  require_noisy(rp, "rate_log_discount");
  detail::require(T > 0.0, "rate_log_discount: T must be > 0");
  return log_discount(s, T, rp);
}

double cir_bond_price(const CirRateParams& rp, double T) {
  return std::exp(rate_log_discount(1.0, T, rp).real());
}

double discount_factor(const CirRateParams& rp, double T) {
  rp.validate();
  if (rp.sigma_r == 0.0) {
    return std::exp(-T * deterministic_average_rate(rp, T));
  }
  return cir_bond_price(rp, T);
}

Complex hybrid_price_integrand(double l, const VanillaOption& opt,
                               const HestonParams& p, const CirRateParams& rp) {
  opt.validate();
  require_noisy(rp, "hybrid_price_integrand");
  const HestonParams mapped = option_propagation(p, p.mu);
  return integrand_mapped(l, opt, mapped, rp,
                          cir_bond_price(rp, opt.maturity));
}

PricingResult hybrid_price(const VanillaOption& opt, const HestonParams& p,
                           const CirRateParams& rp,
                           const QuadratureConfig& cfg) {
  opt.validate();
  rp.validate();
  cfg.validate();
  const double T = opt.maturity;
  if (rp.sigma_r == 0.0) {
    return heston_price(opt, p, deterministic_average_rate(rp, T), cfg);
  }

  const HestonParams mapped = option_propagation(p, p.mu);
  const double bond = cir_bond_price(rp, T);
  const double forward_gap = opt.s0 - opt.strike * bond;
  const auto f = [&](double l) {
    return integrand_mapped(l, opt, mapped, rp, bond);
  };
  const QuadratureResult q = integrate_real_line(f, cfg);
  PricingResult res =
      detail::price_from_integral(q, 0.5 * forward_gap, opt.s0, "hybrid_price");
  if (opt.kind == OptionKind::put) res.price -= forward_gap;
  detail::check_not_negative(res.price, res.error_estimate, cfg,
                             "hybrid_price");
  return res;
}

double hybrid_call_price(const VanillaOption& opt, const HestonParams& p,
                         const CirRateParams& rp,
                         const QuadratureConfig& cfg) {
  return hybrid_price(opt, p, rp, cfg).price;
}

}  // namespace hybridvol
