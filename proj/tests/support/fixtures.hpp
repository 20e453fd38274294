#pragma once

#include "hybridvol/models.hpp"

namespace fixtures {

inline hybridvol::HestonParams base_heston(double rho = -0.5) {
  hybridvol::HestonParams p;
  p.kappa = 1.0;
  p.theta = 0.04;
  p.sigma = 0.2;
  p.rho = rho;
  p.v0 = 0.04;
  return p;
}

inline hybridvol::CirRateParams base_rate() {
  return {.kappa_r = 1.8, .theta_r = 0.03, .sigma_r = 0.1, .r0 = 0.035};
}

inline hybridvol::CirRateParams volatile_rate() {
  return {.kappa_r = 0.5, .theta_r = 0.03, .sigma_r = 0.3, .r0 = 0.035};
}

inline hybridvol::VanillaOption atm(double strike = 100.0, double T = 1.0) {
  return {.s0 = 100.0, .strike = strike, .maturity = T,
          .kind = hybridvol::OptionKind::call};
}

}  // namespace fixtures
