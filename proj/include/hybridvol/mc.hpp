#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridvol/models.hpp"
#include "hybridvol/quadrature.hpp"
#include "hybridvol/random.hpp"

namespace hybridvol {

struct McConfig {
  std::size_t paths = 100000;
  std::size_t steps = 500;  // time step = T / steps
  std::uint64_t seed = 20240611;
  bool antithetic = false;
  // Worker threads; 0 picks the hardware concurrency. Results do not depend
  // on this value.
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
};

// Exact CIR transition over dt: c * chi2'(df, lambda) with
// c = sigma^2 (1 - e^{-kappa dt}) / (4 kappa), df = 4 kappa theta / sigma^2,
// lambda = current e^{-kappa dt} / c. sigma = 0 gives the ODE solution.
double cir_exact_step(double current, double dt, double kappa, double theta,
                      double sigma, RngStream& rng);

// One draw of (1/T) * integral_0^T r dt: exact CIR steps on the grid
// T / mc.steps, trapezoidal rule along the sampled path.
double simulate_rbar(const CirRateParams& rp, double T, const McConfig& mc,
                     RngStream& rng);

// Averages heston_price(opt, p, r = rbar) over mc.paths draws of rbar.
// Draw i uses RngStream(mc.seed, i); antithetic is not used.
McEstimate mc_price_hybrid(const VanillaOption& opt, const HestonParams& p,
                           const CirRateParams& rp, const McConfig& mc,
                           const QuadratureConfig& cfg = {});

// Full-truncation Euler on (ln S, v), discounted payoff average.
McEstimate mc_price_heston_euler(const VanillaOption& opt,
                                 const HestonParams& p, double r,
                                 const McConfig& mc);

// Same simulation priced at several strikes (opt.strike is ignored).
std::vector<McEstimate> mc_price_heston_euler(const VanillaOption& opt,
                                              std::span<const double> strikes,
                                              const HestonParams& p, double r,
                                              const McConfig& mc);

// Terminal logreturns x_T = ln(S_T / S0) - rT from the Euler scheme, one
// per path (antithetic paths interleaved when enabled).
std::vector<double> simulate_heston_logreturns(const HestonParams& p,
                                               double r, double T,
                                               const McConfig& mc);

// Exact lognormal terminal sampling under constant volatility.
McEstimate mc_price_black_scholes(const VanillaOption& opt, double r,
                                  double vol, const McConfig& mc);

}  // namespace hybridvol
