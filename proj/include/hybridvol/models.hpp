#pragma once

namespace hybridvol {

enum class OptionKind { call, put };

// Volatility-process parameters of
//   dS = mu S dt + S sqrt(v) dw1
//   dv = kappa (theta - v) dt + sigma sqrt(v) (rho dw1 + sqrt(1 - rho^2) dw2)
// plus the volatility risk premium lambda. When lambda != 0, (kappa, theta)
// are the real-world values and the pricers map them to option-propagation
// values with risk_neutral_map.
struct HestonParams {
  double mu = 0.0;
  double kappa = 1.0;
  double theta = 0.04;
  double sigma = 0.2;
  double rho = 0.0;
  double v0 = 0.04;
  double lambda = 0.0;

  void validate() const;
};

// dr = kappa_r (theta_r - r) dt + sigma_r sqrt(r) dw3, independent of w1, w2.
struct CirRateParams {
  double kappa_r = 1.0;
  double theta_r = 0.03;
  double sigma_r = 0.1;
  double r0 = 0.03;

  void validate() const;
};

struct VanillaOption {
  double s0 = 100.0;
  double strike = 100.0;
  double maturity = 1.0;
  OptionKind kind = OptionKind::call;

  void validate() const;
};

struct FellerReport {
  bool satisfied = false;
  double lhs = 0.0;  // 2 kappa theta
  double rhs = 0.0;  // sigma^2
};

struct MeanReversion {
  double kappa = 0.0;
  double theta = 0.0;
};

// (kappa0, theta0, lambda) -> (kappa0 + lambda, kappa0 theta0 / (kappa0 +
// lambda)). The product kappa * theta is preserved.
MeanReversion risk_neutral_map(double kappa0, double theta0, double lambda);

// Parameters under option propagation: mu = r, mapped (kappa, theta),
// lambda = 0. Returns p unchanged apart from mu when lambda is already 0.
HestonParams option_propagation(const HestonParams& p, double r);

FellerReport feller_check(const HestonParams& p);
FellerReport feller_check(const CirRateParams& rp);

// Black-Scholes price; puts by parity. vol = 0 gives the discounted
// intrinsic value of the forward.
double bs_price(const VanillaOption& opt, double r, double vol);

// (1/T) * integral of the zero-noise rate path r' = kappa_r (theta_r - r).
double deterministic_average_rate(const CirRateParams& rp, double T);

}  // namespace hybridvol
