#include "hybridvol/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hybridvol/errors.hpp"
#include "hybridvol/heston.hpp"
#include "parallel.hpp"

namespace hybridvol {

namespace {

constexpr std::size_t kBlock = 1024;

using detail::RunningStats;

// log(S_T / S0) for one path and, when requested, its antithetic mirror.
std::pair<double, double> euler_terminal(const HestonParams& p, double r,
                                         double T, std::size_t steps,
                                         bool antithetic, RngStream& rng) {
  const double dt = T / static_cast<double>(steps);
  const double orth = std::sqrt(1.0 - p.rho * p.rho);
  double x = 0.0;
  double v = p.v0;
  double xa = 0.0;
  double va = p.v0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double z1 = sample_standard_normal(rng);
    const double z2 = sample_standard_normal(rng);
    const double zv = p.rho * z1 + orth * z2;

    const double vp = std::max(v, 0.0);
    const double sq = std::sqrt(vp * dt);
    x += (r - 0.5 * vp) * dt + sq * z1;
    v += p.kappa * (p.theta - vp) * dt + p.sigma * sq * zv;

    if (antithetic) {
      const double vpa = std::max(va, 0.0);
      const double sqa = std::sqrt(vpa * dt);
      xa += (r - 0.5 * vpa) * dt - sqa * z1;
      va += p.kappa * (p.theta - vpa) * dt - p.sigma * sqa * zv;
    }
  }
  return {x, xa};
}

double payoff(OptionKind kind, double spot, double strike) {
  return kind == OptionKind::call ? std::max(spot - strike, 0.0)
                                  : std::max(strike - spot, 0.0);
}

std::size_t sample_units(const McConfig& mc) {
  return mc.antithetic ? mc.paths / 2 : mc.paths;
}

}  // namespace

void McConfig::validate() const {
  detail::require(paths >= 2, "mc: paths must be >= 2");
  detail::require(steps >= 1, "mc: steps must be >= 1");
}

double cir_exact_step(double current, double dt, double kappa, double theta,
                      double sigma, RngStream& rng) {
  detail::require(current >= 0.0 && std::isfinite(current),
                  "cir_exact_step: current must be >= 0");
  detail::require(dt > 0.0, "cir_exact_step: dt must be > 0");
  detail::require(kappa > 0.0 && theta > 0.0 && sigma >= 0.0,
                  "cir_exact_step: need kappa > 0, theta > 0, sigma >= 0");
  const double decay = std::exp(-kappa * dt);
  if (sigma == 0.0) return theta + (current - theta) * decay;
  const double c = sigma * sigma * (-std::expm1(-kappa * dt)) / (4.0 * kappa);
  const double df = 4.0 * kappa * theta / (sigma * sigma);
  const double noncentrality = current * decay / c;
  return c * sample_noncentral_chisq(df, noncentrality, rng);
}

double simulate_rbar(const CirRateParams& rp, double T, const McConfig& mc,
                     RngStream& rng) {
  rp.validate();
  mc.validate();
  detail::require(T > 0.0, "simulate_rbar: T must be > 0");
  if (rp.sigma_r == 0.0) return deterministic_average_rate(rp, T);

  const double dt = T / static_cast<double>(mc.steps);
  double r = rp.r0;
  double area = 0.0;
  for (std::size_t n = 0; n < mc.steps; ++n) {
    const double next =
        cir_exact_step(r, dt, rp.kappa_r, rp.theta_r, rp.sigma_r, rng);
    area += 0.5 * (r + next) * dt;
    r = next;
  }
  return area / T;
}

McEstimate mc_price_hybrid(const VanillaOption& opt, const HestonParams& p,
                           const CirRateParams& rp, const McConfig& mc,
                           const QuadratureConfig& cfg) {
  opt.validate();
  p.validate();
  rp.validate();
  mc.validate();
  cfg.validate();
  const std::size_t blocks = (mc.paths + kBlock - 1) / kBlock;
  std::vector<RunningStats> stats(blocks);
  detail::for_each_block(
      mc.paths, kBlock, mc.threads,
      [&](std::size_t b, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          RngStream rng(mc.seed, i);
          const double rbar = simulate_rbar(rp, opt.maturity, mc, rng);
          try {
            stats[b].add(heston_price(opt, p, rbar, cfg).price);
          } catch (const NumericalError& e) {
            throw NumericalError("mc_price_hybrid: path " + std::to_string(i) +
                                 " (rbar=" + std::to_string(rbar) +
                                 "): " + e.what());
          }
        }
      });
  RunningStats total;
  for (const auto& s : stats) total.merge(s);
  return {total.mean, total.std_error(), mc.paths, mc.seed};
}

std::vector<McEstimate> mc_price_heston_euler(const VanillaOption& opt,
                                              std::span<const double> strikes,
                                              const HestonParams& p0, double r,
                                              const McConfig& mc) {
  opt.validate();
  mc.validate();
  detail::require(std::isfinite(r), "mc_price_heston_euler: r must be finite");
  for (double k : strikes) {
    detail::require(k > 0.0, "mc_price_heston_euler: strikes must be > 0");
  }
  const HestonParams p = option_propagation(p0, r);
  const double T = opt.maturity;
  const double discount = std::exp(-r * T);
  const std::size_t units = sample_units(mc);
  const std::size_t blocks = (units + kBlock - 1) / kBlock;
  const std::size_t n_strikes = strikes.size();
  std::vector<RunningStats> stats(blocks * n_strikes);

  detail::for_each_block(
      units, kBlock, mc.threads,
      [&](std::size_t b, std::size_t begin, std::size_t end) {
        RunningStats* row = stats.data() + b * n_strikes;
        for (std::size_t i = begin; i < end; ++i) {
          RngStream rng(mc.seed, i);
          const auto [x, xa] =
              euler_terminal(p, r, T, mc.steps, mc.antithetic, rng);
          const double spot = opt.s0 * std::exp(x);
          const double spot_a = opt.s0 * std::exp(xa);
          for (std::size_t k = 0; k < n_strikes; ++k) {
            double value = payoff(opt.kind, spot, strikes[k]);
            if (mc.antithetic) {
              value = 0.5 * (value + payoff(opt.kind, spot_a, strikes[k]));
            }
            row[k].add(discount * value);
          }
        }
      });

  std::vector<McEstimate> out(n_strikes);
  for (std::size_t k = 0; k < n_strikes; ++k) {
    RunningStats total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(stats[b * n_strikes + k]);
    out[k] = {total.mean, total.std_error(),
              mc.antithetic ? 2 * units : units, mc.seed};
  }
  return out;
}

McEstimate mc_price_heston_euler(const VanillaOption& opt,
                                 const HestonParams& p, double r,
                                 const McConfig& mc) {
  const double strike[] = {opt.strike};
  return mc_price_heston_euler(opt, strike, p, r, mc).front();
}

std::vector<double> simulate_heston_logreturns(const HestonParams& p0,
                                               double r, double T,
                                               const McConfig& mc) {
  mc.validate();
  detail::require(T > 0.0, "simulate_heston_logreturns: T must be > 0");
  const HestonParams p = option_propagation(p0, r);
  const std::size_t units = sample_units(mc);
  const std::size_t per_unit = mc.antithetic ? 2 : 1;
  std::vector<double> out(units * per_unit);
  detail::for_each_block(
      units, kBlock, mc.threads,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          RngStream rng(mc.seed, i);
          const auto [x, xa] =
              euler_terminal(p, r, T, mc.steps, mc.antithetic, rng);
          out[i * per_unit] = x - r * T;
          if (mc.antithetic) out[i * per_unit + 1] = xa - r * T;
        }
      });
  return out;
}

McEstimate mc_price_black_scholes(const VanillaOption& opt, double r,
                                  double vol, const McConfig& mc) {
  opt.validate();
  mc.validate();
  detail::require(vol >= 0.0, "mc_price_black_scholes: vol must be >= 0");
  const double T = opt.maturity;
  const double drift = (r - 0.5 * vol * vol) * T;
  const double scale = vol * std::sqrt(T);
  const double discount = std::exp(-r * T);
  const std::size_t units = sample_units(mc);
  const std::size_t blocks = (units + kBlock - 1) / kBlock;
  std::vector<RunningStats> stats(blocks);
  detail::for_each_block(
      units, kBlock, mc.threads,
      [&](std::size_t b, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          RngStream rng(mc.seed, i);
          const double z = sample_standard_normal(rng);
          double value = payoff(opt.kind, opt.s0 * std::exp(drift + scale * z),
                                opt.strike);
          if (mc.antithetic) {
            value = 0.5 * (value + payoff(opt.kind,
                                          opt.s0 * std::exp(drift - scale * z),
                                          opt.strike));
          }
          stats[b].add(discount * value);
        }
      });
  RunningStats total;
  for (const auto& s : stats) total.merge(s);
  return {total.mean, total.std_error(), mc.antithetic ? 2 * units : units,
          mc.seed};
}

}  // namespace hybridvol
