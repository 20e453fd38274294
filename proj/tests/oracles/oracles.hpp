#pragma once

// Reference implementations used only by the tests. None of these share code
// with the library: pricing integrals go through Boost quadrature and the
// closed forms follow textbook parametrizations.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

using boost::math::quadrature::gauss_kronrod;
using cd = std::complex<double>;

// Complex-free CIR bond price A e^{-B r0}.
inline double cir_bond(double kappa, double theta, double sigma, double r0,
                       double T) {
  const double g = std::sqrt(kappa * kappa + 2.0 * sigma * sigma);
  const double em = std::exp(g * T) - 1.0;
  const double den = (g + kappa) * em + 2.0 * g;
  const double B = 2.0 * em / den;
  const double A = std::pow(2.0 * g * std::exp(0.5 * (kappa + g) * T) / den,
                            2.0 * kappa * theta / (sigma * sigma));
  return A * std::exp(-B * r0);
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E[e^{-rT} (S_T - K)^+] for lognormal S_T by direct quadrature in the
// normal variable.
inline double lognormal_call(double s0, double k, double T, double r,
                             double vol) {
  const double sd = vol * std::sqrt(T);
  const double m = std::log(s0) + (r - 0.5 * vol * vol) * T;
  const double z0 = (std::log(k) - m) / sd;
  auto f = [&](double z) {
    return (std::exp(m + sd * z - 0.5 * z * z) - k * std::exp(-0.5 * z * z)) /
           std::sqrt(2.0 * std::numbers::pi);
  };
  double err = 0.0;
  const double v = gauss_kronrod<double, 61>::integrate(
      f, z0, std::numeric_limits<double>::infinity(), 20, 1e-15, &err);
  return std::exp(-r * T) * v;
}

// Heston call with the rotation-free characteristic function of Albrecher
// et al. and the two-probability representation.
struct HestonInputs {
  double s0, k, T, r, kappa, theta, sigma, rho, v0;
};

inline cd heston_cf(const HestonInputs& h, cd u) {
  const cd i{0.0, 1.0};
  const cd b = h.kappa - h.rho * h.sigma * i * u;
  const cd d = std::sqrt(b * b + h.sigma * h.sigma * (i * u + u * u));
  const cd g = (b - d) / (b + d);
  const cd e = std::exp(-d * h.T);
  const cd C = h.r * i * u * h.T +
               h.kappa * h.theta / (h.sigma * h.sigma) *
                   ((b - d) * h.T - 2.0 * std::log((1.0 - g * e) / (1.0 - g)));
  const cd D = (b - d) / (h.sigma * h.sigma) * (1.0 - e) / (1.0 - g * e);
  return std::exp(C + D * h.v0 + i * u * std::log(h.s0));
}

inline double heston_call(const HestonInputs& h) {
  const cd i{0.0, 1.0};
  const double lk = std::log(h.k);
  const cd fwd = heston_cf(h, -i);
  auto p1 = [&](double u) {
    return (std::exp(-i * u * lk) * heston_cf(h, u - i) / (i * u * fwd)).real();
  };
  auto p2 = [&](double u) {
    return (std::exp(-i * u * lk) * heston_cf(h, u) / (i * u)).real();
  };
  const double inf = std::numeric_limits<double>::infinity();
  double err = 0.0;
  const double P1 =
      0.5 + gauss_kronrod<double, 61>::integrate(p1, 0.0, inf, 12, 1e-13, &err) /
                std::numbers::pi;
  const double P2 =
      0.5 + gauss_kronrod<double, 61>::integrate(p2, 0.0, inf, 12, 1e-13, &err) /
                std::numbers::pi;
  return h.s0 * P1 - h.k * std::exp(-h.r * h.T) * P2;
}

// E[exp(-s * integral_0^T r dt)] for CIR rates, textbook A(s) e^{-B(s) r0}
// continued to complex s (principal branches; fine for moderate T).
inline cd cir_transform(double kappa, double theta, double sigma, double r0,
                        double T, cd s) {
  const cd g = std::sqrt(kappa * kappa + 2.0 * sigma * sigma * s);
  const cd em = std::exp(g * T) - 1.0;
  const cd den = (g + kappa) * em + 2.0 * g;
  const cd B = 2.0 * s * em / den;
  const cd A = std::pow(2.0 * g * std::exp(0.5 * (kappa + g) * T) / den,
                        2.0 * kappa * theta / (sigma * sigma));
  return A * std::exp(-B * r0);
}

struct RateInputs {
  double kappa_r, theta_r, sigma_r, r0;
};

// Call under Heston volatility and an independent CIR short rate, as
// S0 P1 - K P(0,T) P2 with P1 under the share measure and P2 under the
// T-forward measure.
inline double hybrid_call(const HestonInputs& h0, const RateInputs& q) {
  const cd i{0.0, 1.0};
  HestonInputs h = h0;
  h.r = 0.0;
  h.s0 = 1.0;
  const double lk = std::log(h0.k / h0.s0);
  const auto rate = [&](cd s) {
    return cir_transform(q.kappa_r, q.theta_r, q.sigma_r, q.r0, h.T, s);
  };
  const double bond = rate(1.0).real();
  auto p1 = [&](double u) {
    const cd cf = heston_cf(h, u - i) * rate(-i * u);
    return (std::exp(-i * u * lk) * cf / (i * u)).real();
  };
  auto p2 = [&](double u) {
    const cd cf = heston_cf(h, u) * rate(1.0 - i * u) / bond;
    return (std::exp(-i * u * lk) * cf / (i * u)).real();
  };
  const double inf = std::numeric_limits<double>::infinity();
  double err = 0.0;
  const double P1 =
      0.5 + gauss_kronrod<double, 61>::integrate(p1, 0.0, inf, 12, 1e-13, &err) /
                std::numbers::pi;
  const double P2 =
      0.5 + gauss_kronrod<double, 61>::integrate(p2, 0.0, inf, 12, 1e-13, &err) /
                std::numbers::pi;
  return h0.s0 * P1 - h0.k * bond * P2;
}

// 50-digit complex arithmetic.
using mp_complex = boost::multiprecision::cpp_complex_50;
using mp_real = boost::multiprecision::cpp_bin_float_50;

inline cd to_cd(const mp_complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace oracle
