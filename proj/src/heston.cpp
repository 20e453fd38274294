#include "hybridvol/heston.hpp"

#include <cmath>
#include <numbers>

#include "hybridvol/detail/cir_transform.hpp"
#include "hybridvol/detail/price_integral.hpp"
#include "hybridvol/errors.hpp"

namespace hybridvol {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

HestonParams mapped(const HestonParams& p) {
  return option_propagation(p, p.mu);
}

Complex omega_mapped(Complex l, const HestonParams& p) {
  const Complex k = p.kappa + kI * l * (p.rho * p.sigma);
  return 0.5 * std::sqrt(k * k + (p.sigma * p.sigma) * l * (l - kI));
}

Complex log_cf_mapped(Complex l, double T, const HestonParams& p) {
  const Complex k = p.kappa + kI * l * (p.rho * p.sigma);
  const Complex s = 0.5 * l * (l - kI);
  return detail::cir_log_laplace(k, p.kappa * p.theta, p.sigma, p.v0, s, T);
}

// Re-density of x at horizon T for already mapped parameters.
QuadratureResult density_integral(double x, double T, const HestonParams& p,
                                  const QuadratureConfig& cfg) {
  const auto f = [&](double l) {
    return std::exp(kI * (l * x) + log_cf_mapped(l, T, p)) / kTwoPi;
  };
  return integrate_real_line(f, cfg);
}

double density_mapped(double x, double T, const HestonParams& p,
                      const QuadratureConfig& cfg) {
  const QuadratureResult q = density_integral(x, T, p, cfg);
  return detail::price_from_integral(q, 0.0, 1.0, "marginal_density").price;
}

Complex price_integrand_mapped(double l, const VanillaOption& opt,
                               const HestonParams& p, double r) {
  const double T = opt.maturity;
  const double discounted_strike = opt.strike * std::exp(-r * T);
  const double cutoff = std::log(discounted_strike / opt.s0);  // x_e - rT
  const Complex asset = opt.s0 * std::exp(log_cf_mapped(l + kI, T, p));
  const Complex cash = discounted_strike * std::exp(log_cf_mapped(l, T, p));
  const Complex braced =
      std::exp(kI * (l * cutoff)) * (asset - cash) - opt.s0 + discounted_strike;
  return kI * braced / (kTwoPi * l);
}

}  // namespace

Complex omega_of_l(Complex l, const HestonParams& p) {
  return omega_mapped(l, mapped(p));
}

Complex nu_of_l(Complex l, const HestonParams& p) {
  return omega_mapped(l + kI, mapped(p));
}

Complex big_n_of_l(double l, double T, const HestonParams& p0) {
  detail::require(T > 0.0, "big_n_of_l: T must be > 0");
  const HestonParams p = mapped(p0);
  const Complex omega = omega_mapped(l, p);
  const Complex c = (p.kappa + kI * (l * p.rho * p.sigma)) / (2.0 * omega);
  return detail::reciprocal_hyperbolic(omega * T, c).r;
}

HestonKernelTerms heston_kernel(double l, const VanillaOption& opt,
                                const HestonParams& p0) {
  opt.validate();
  const HestonParams p = mapped(p0);
  const double T = opt.maturity;
  const double sigma2 = p.sigma * p.sigma;
  const double kappa_theta = p.kappa * p.theta;

  HestonKernelTerms t;
  t.omega = omega_mapped(l, p);
  t.nu = omega_mapped(Complex(l, 1.0), p);
  t.a = p.v0 + kappa_theta * T;
  t.x_e = std::log(opt.strike / opt.s0);

  const Complex k_n = p.kappa + kI * (l * p.rho * p.sigma);
  const Complex k_m = k_n - p.rho * p.sigma;
  const auto hn = detail::reciprocal_hyperbolic(t.omega * T, k_n / (2.0 * t.omega));
  const auto hm = detail::reciprocal_hyperbolic(t.nu * T, k_m / (2.0 * t.nu));
  t.big_n = hn.r;
  t.big_m = hm.r;
  t.upsilon_exp = 2.0 * t.omega * p.v0 / sigma2 * (hn.r_over_sinh - hn.coth) +
                  2.0 * kappa_theta / sigma2 * hn.log_r;
  t.theta_exp = 2.0 * t.nu * p.v0 / sigma2 * (hm.r_over_sinh - hm.coth) +
                2.0 * kappa_theta / sigma2 * hm.log_r;
  return t;
}

Complex heston_log_cf(Complex l, double T, const HestonParams& p) {
  detail::require(T > 0.0, "heston_log_cf: T must be > 0");
  return log_cf_mapped(l, T, mapped(p));
}

double marginal_density(LogReturn x, double T, const HestonParams& p,
                        const QuadratureConfig& cfg) {
  detail::require(T > 0.0, "marginal_density: T must be > 0");
  detail::require(std::isfinite(x.value), "marginal_density: x must be finite");
  cfg.validate();
  return density_mapped(x.value, T, mapped(p), cfg);
}

Complex heston_price_integrand(double l, const VanillaOption& opt,
                               const HestonParams& p, double r) {
  opt.validate();
  return price_integrand_mapped(l, opt, mapped(p), r);
}

PricingResult heston_price(const VanillaOption& opt, const HestonParams& p0,
                           double r, const QuadratureConfig& cfg) {
  opt.validate();
  cfg.validate();
  detail::require(std::isfinite(r), "heston_price: r must be finite");
  const HestonParams p = mapped(p0);
  const double discounted_strike = opt.strike * std::exp(-r * opt.maturity);
  const double forward_gap = opt.s0 - discounted_strike;

  const auto f = [&](double l) {
    return price_integrand_mapped(l, opt, p, r);
  };
  const QuadratureResult q = integrate_real_line(f, cfg);
  PricingResult res =
      detail::price_from_integral(q, 0.5 * forward_gap, opt.s0, "heston_price");
  if (opt.kind == OptionKind::put) res.price -= forward_gap;
  detail::check_not_negative(res.price, res.error_estimate, cfg,
                             "heston_price");
  return res;
}

double heston_call_price(const VanillaOption& opt, const HestonParams& p,
                         double r, const QuadratureConfig& cfg) {
  return heston_price(opt, p, r, cfg).price;
}

PricingResult price_via_density(const VanillaOption& opt,
                                const HestonParams& p0, double r,
                                const QuadratureConfig& cfg) {
  opt.validate();
  cfg.validate();
  detail::require(std::isfinite(r), "price_via_density: r must be finite");
  const HestonParams p = mapped(p0);
  const double T = opt.maturity;
  const double discounted_strike = opt.strike * std::exp(-r * T);
  const double cutoff = std::log(discounted_strike / opt.s0);

  // Payoff weights reach ~S0; 1e-13 is about the roundoff floor of the
  // inversion.
  QuadratureConfig inner = cfg;
  inner.abs_tol = std::max(1e-2 * cfg.abs_tol / std::max(1.0, opt.s0), 1e-13);

  // x_T = ln(S_T / S0) - rT, so e^{-rT} (K - S_T)^+ = (K e^{-rT} - S0 e^x)^+.
  // The put payoff is bounded; calls follow by parity.
  const auto f = [&](double x) {
    const double payoff = discounted_strike - opt.s0 * std::exp(x);
    return Complex(payoff * density_mapped(x, T, p, inner), 0.0);
  };

  const double kt = p.kappa * T;
  const double mean_variance =
      p.theta + (p.v0 - p.theta) * (kt < 1e-8 ? 1.0 : -std::expm1(-kt) / kt);
  const double center = -0.5 * mean_variance * T;
  const double half_width = 8.0 * std::sqrt(mean_variance * T) + 0.1;
  const double inf = std::numeric_limits<double>::infinity();
  const QuadratureResult q =
      integrate_expanding(f, -inf, cutoff, center, half_width, cfg);
  const double parity_shift =
      opt.kind == OptionKind::call ? opt.s0 - discounted_strike : 0.0;
  PricingResult res = detail::price_from_integral(q, parity_shift, opt.s0,
                                                  "price_via_density");
  detail::check_not_negative(res.price, res.error_estimate, cfg,
                             "price_via_density");
  return res;
}

}  // namespace hybridvol
