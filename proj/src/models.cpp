#include "hybridvol/models.hpp"

#include <algorithm>
#include <cmath>

#include "hybridvol/errors.hpp"

namespace hybridvol {

using detail::require;

void HestonParams::validate() const {
  require(std::isfinite(mu), "heston: mu must be finite");
  require(kappa > 0.0 && std::isfinite(kappa), "heston: kappa must be > 0");
  require(theta > 0.0 && std::isfinite(theta), "heston: theta must be > 0");
  require(sigma > 0.0 && std::isfinite(sigma), "heston: sigma must be > 0");
  require(rho > -1.0 && rho < 1.0, "heston: rho must lie in (-1, 1)");
  require(v0 >= 0.0 && std::isfinite(v0), "heston: v0 must be >= 0");
  require(std::isfinite(lambda), "heston: lambda must be finite");
  require(kappa + lambda > 0.0, "heston: kappa + lambda must be > 0");
}

void CirRateParams::validate() const {
  require(kappa_r > 0.0 && std::isfinite(kappa_r), "rate: kappa_r must be > 0");
  require(theta_r > 0.0 && std::isfinite(theta_r), "rate: theta_r must be > 0");
  require(sigma_r >= 0.0 && std::isfinite(sigma_r),
          "rate: sigma_r must be >= 0");
  require(r0 >= 0.0 && std::isfinite(r0), "rate: r0 must be >= 0");
}

void VanillaOption::validate() const {
  require(s0 > 0.0 && std::isfinite(s0), "option: s0 must be > 0");
  require(strike > 0.0 && std::isfinite(strike), "option: strike must be > 0");
  require(maturity > 0.0 && std::isfinite(maturity),
          "option: maturity must be > 0");
}

MeanReversion risk_neutral_map(double kappa0, double theta0, double lambda) {
  require(kappa0 > 0.0, "risk_neutral_map: kappa0 must be > 0");
  require(theta0 > 0.0, "risk_neutral_map: theta0 must be > 0");
  require(kappa0 + lambda > 0.0,
          "risk_neutral_map: kappa0 + lambda must be > 0");
  if (lambda == 0.0) return {kappa0, theta0};
  const double kappa = kappa0 + lambda;
  return {kappa, kappa0 * theta0 / kappa};
}

HestonParams option_propagation(const HestonParams& p, double r) {
  p.validate();
  HestonParams q = p;
  const MeanReversion m = risk_neutral_map(p.kappa, p.theta, p.lambda);
  q.kappa = m.kappa;
  q.theta = m.theta;
  q.lambda = 0.0;
  q.mu = r;
  return q;
}

FellerReport feller_check(const HestonParams& p) {
  p.validate();
  FellerReport f;
  f.lhs = 2.0 * p.kappa * p.theta;
  f.rhs = p.sigma * p.sigma;
  f.satisfied = f.lhs >= f.rhs;
  return f;
}

FellerReport feller_check(const CirRateParams& rp) {
  rp.validate();
  FellerReport f;
  f.lhs = 2.0 * rp.kappa_r * rp.theta_r;
  f.rhs = rp.sigma_r * rp.sigma_r;
  f.satisfied = f.lhs >= f.rhs;
  return f;
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

double bs_price(const VanillaOption& opt, double r, double vol) {
  opt.validate();
  require(vol >= 0.0 && std::isfinite(vol), "bs_price: vol must be >= 0");
  require(std::isfinite(r), "bs_price: r must be finite");
  const double T = opt.maturity;
  const double discounted_strike = opt.strike * std::exp(-r * T);
  const double forward_gap = opt.s0 - discounted_strike;

  double call;
  const double stdev = vol * std::sqrt(T);
  if (stdev == 0.0) {
    call = std::max(forward_gap, 0.0);
  } else {
    const double d1 =
        std::log(opt.s0 / discounted_strike) / stdev + 0.5 * stdev;
    const double d2 = d1 - stdev;
    call = opt.s0 * normal_cdf(d1) - discounted_strike * normal_cdf(d2);
  }
  return opt.kind == OptionKind::call ? call : call - forward_gap;
}

double deterministic_average_rate(const CirRateParams& rp, double T) {
  rp.validate();
  require(T > 0.0, "deterministic_average_rate: T must be > 0");
  const double x = rp.kappa_r * T;
  // (1 - e^{-x}) / x, accurate for small x
  const double decay = x < 1e-8 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
  return rp.theta_r + (rp.r0 - rp.theta_r) * decay;
}

}  // namespace hybridvol
