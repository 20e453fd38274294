#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>

namespace hybridvol {

using Complex = std::complex<double>;
using ComplexIntegrand = std::function<Complex(double)>;

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::int64_t max_evals = 400000;
  // Initial half-width of the integration window; grown by doubling until
  // the outermost panel contributes less than abs_tol.
  double truncation_bound = 100.0;

  void validate() const;
};

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b] (finite).
QuadratureResult integrate_interval(const ComplexIntegrand& f, double a,
                                    double b, const QuadratureConfig& cfg);

// Integral of f over the whole real line. The line is folded at the origin,
// so f is only ever evaluated at the symmetric pairs (l, -l) with l > 0 and
// never at l = 0 itself. The window [0, L] starts at cfg.truncation_bound
// and doubles until the newest panel [L, 2L] contributes less than abs_tol.
QuadratureResult integrate_real_line(const ComplexIntegrand& f,
                                     const QuadratureConfig& cfg);

// Integral of f over [lower, upper], where either limit may be infinite.
// Integration starts on the window [center - half_width, center + half_width]
// clipped to the limits and grows the window by doubling its half-width
// until the newly added panels contribute less than abs_tol.
QuadratureResult integrate_expanding(
    const ComplexIntegrand& f, double lower, double upper, double center,
    double half_width, const QuadratureConfig& cfg);

}  // namespace hybridvol
