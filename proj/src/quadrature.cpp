#include "hybridvol/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "hybridvol/errors.hpp"

namespace hybridvol {

void QuadratureConfig::validate() const {
  detail::require(abs_tol > 0.0, "quadrature: abs_tol must be > 0");
  detail::require(rel_tol >= 0.0, "quadrature: rel_tol must be >= 0");
  detail::require(max_evals >= 15, "quadrature: max_evals must be >= 15");
  detail::require(truncation_bound > 0.0,
                  "quadrature: truncation_bound must be > 0");
}

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double a = 0.0;
  double b = 0.0;
  Complex value;
  double error = 0.0;
};

bool by_error(const Panel& lhs, const Panel& rhs) {
  return lhs.error < rhs.error;
}

class Evaluator {
 public:
  // With fold set, the evaluated function is f(x) + f(-x).
  Evaluator(const ComplexIntegrand& f, bool fold) : f_(f), fold_(fold) {}

  Complex operator()(double x) {
    if (!fold_) return checked(x);
    return checked(x) + checked(-x);
  }

  std::int64_t evaluations() const { return evaluations_; }
  std::int64_t panel_cost() const { return fold_ ? 30 : 15; }

 private:
  Complex checked(double x) {
    ++evaluations_;
    const Complex y = f_(x);
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand returned a non-finite value " << y
          << " at abscissa " << x;
      throw NumericalError(msg.str());
    }
    return y;
  }

  const ComplexIntegrand& f_;
  bool fold_;
  std::int64_t evaluations_ = 0;
};

// 15-point Kronrod estimate with the embedded 7-point Gauss rule for the
// error, using the QUADPACK error scaling.
Panel gauss_kronrod_15(Evaluator& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<Complex, 7> left{};
  std::array<Complex, 7> right{};
  const Complex fc = f(center);
  Complex res_gauss = fc * kWg[3];
  Complex res_kronrod = fc * kWgk[7];
  double res_abs = kWgk[7] * std::abs(fc);

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    left[static_cast<std::size_t>(j)] = f(center - dx);
    right[static_cast<std::size_t>(j)] = f(center + dx);
    const Complex pair =
        left[static_cast<std::size_t>(j)] + right[static_cast<std::size_t>(j)];
    res_kronrod += kWgk[static_cast<std::size_t>(j)] * pair;
    if (j % 2 == 1) res_gauss += kWg[static_cast<std::size_t>(j / 2)] * pair;
    res_abs += kWgk[static_cast<std::size_t>(j)] *
               (std::abs(left[static_cast<std::size_t>(j)]) +
                std::abs(right[static_cast<std::size_t>(j)]));
  }

  const Complex mean = 0.5 * res_kronrod;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(left[j] - mean) + std::abs(right[j] - mean));
  }

  const double width = std::abs(half);
  Panel p;
  p.a = a;
  p.b = b;
  p.value = res_kronrod * half;
  res_abs *= width;
  res_asc *= width;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  p.error = err;
  return p;
}

// Global adaptive bisection over a collection of panels sharing one budget.
class AdaptiveSum {
 public:
  AdaptiveSum(Evaluator& f, std::int64_t budget) : f_(f), budget_(budget) {}

  void add(double a, double b) {
    if (!(b > a)) return;
    if (f_.evaluations() + f_.panel_cost() > budget_) {
      exhausted_ = true;
      return;
    }
    push(gauss_kronrod_15(f_, a, b));
  }

  void absorb(AdaptiveSum&& other) {
    for (auto& p : other.heap_) push(p);
    for (auto& p : other.frozen_) frozen_.push_back(p);
    other.heap_.clear();
    other.frozen_.clear();
  }

  // Bisects the worst panel until the summed error estimate is at most the
  // tolerance implied by (abs_tol, rel_tol), or the budget is exhausted.
  void refine(double abs_tol, double rel_tol) {
    while (!heap_.empty()) {
      const double target = std::max(abs_tol, rel_tol * std::abs(value()));
      if (error() <= target) return;
      if (f_.evaluations() + 2 * f_.panel_cost() > budget_) {
        exhausted_ = true;
        return;
      }
      std::pop_heap(heap_.begin(), heap_.end(), by_error);
      const Panel worst = heap_.back();
      heap_.pop_back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b) ||
          (worst.b - worst.a) <
              100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
        frozen_.push_back(worst);
        continue;
      }
      push(gauss_kronrod_15(f_, worst.a, mid));
      push(gauss_kronrod_15(f_, mid, worst.b));
    }
  }

  Complex value() const {
    Complex sum;
    Complex comp;  // Neumaier compensation
    auto accumulate = [&](const Complex& x) {
      const Complex t = sum + x;
      auto fix = [](double s, double v, double t_) {
        return std::abs(s) >= std::abs(v) ? (s - t_) + v : (v - t_) + s;
      };
      comp += Complex(fix(sum.real(), x.real(), t.real()),
                      fix(sum.imag(), x.imag(), t.imag()));
      sum = t;
    };
    for (const auto& p : heap_) accumulate(p.value);
    for (const auto& p : frozen_) accumulate(p.value);
    return sum + comp;
  }

  double error() const {
    double e = 0.0;
    for (const auto& p : heap_) e += p.error;
    for (const auto& p : frozen_) e += p.error;
    return e;
  }

  bool exhausted() const { return exhausted_; }

 private:
  void push(const Panel& p) {
    heap_.push_back(p);
    std::push_heap(heap_.begin(), heap_.end(), by_error);
  }

  Evaluator& f_;
  std::int64_t budget_;
  std::vector<Panel> heap_;
  std::vector<Panel> frozen_;
  bool exhausted_ = false;
};

QuadratureResult finish(const AdaptiveSum& sum, const Evaluator& f,
                        const QuadratureConfig& cfg, bool window_converged) {
  QuadratureResult r;
  r.value = sum.value();
  r.error_estimate = sum.error();
  r.evaluations = f.evaluations();
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
  r.converged = window_converged && !sum.exhausted() &&
                r.error_estimate <= target;
  return r;
}

QuadratureResult expanding(Evaluator& f, double lower, double upper,
                           double center, double half_width,
                           const QuadratureConfig& cfg) {
  AdaptiveSum total(f, cfg.max_evals);
  center = std::clamp(center, lower, upper);
  double lo = std::max(lower, center - half_width);
  double hi = std::min(upper, center + half_width);
  total.add(lo, hi);
  total.refine(cfg.abs_tol, cfg.rel_tol);

  constexpr int kMaxDoublings = 64;
  bool window_converged = false;
  double width = half_width;
  for (int k = 0; k < kMaxDoublings && !total.exhausted(); ++k) {
    const bool more_left = lo > lower;
    const bool more_right = hi < upper;
    if (!more_left && !more_right) {
      window_converged = true;
      break;
    }
    width *= 2.0;
    if (!std::isfinite(center - width) || !std::isfinite(center + width)) {
      break;
    }
    const double new_lo = std::max(lower, center - width);
    const double new_hi = std::min(upper, center + width);
    const double target =
        std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value()));

    AdaptiveSum left(f, cfg.max_evals);
    AdaptiveSum right(f, cfg.max_evals);
    if (more_left) {
      left.add(new_lo, lo);
      left.refine(0.5 * target, 0.0);
    }
    if (more_right) {
      right.add(hi, new_hi);
      right.refine(0.5 * target, 0.0);
    }
    const bool small = std::abs(left.value()) < cfg.abs_tol &&
                       std::abs(right.value()) < cfg.abs_tol;
    const bool out_of_budget = left.exhausted() || right.exhausted();
    total.absorb(std::move(left));
    total.absorb(std::move(right));
    lo = new_lo;
    hi = new_hi;
    if (out_of_budget) break;
    if (small) {
      window_converged = true;
      break;
    }
  }
  total.refine(cfg.abs_tol, cfg.rel_tol);
  return finish(total, f, cfg, window_converged);
}

}  // namespace

QuadratureResult integrate_interval(const ComplexIntegrand& f, double a,
                                    double b, const QuadratureConfig& cfg) {
  cfg.validate();
  detail::require(std::isfinite(a) && std::isfinite(b),
                  "integrate_interval: limits must be finite");
  const double sign = b < a ? -1.0 : 1.0;
  Evaluator eval(f, false);
  AdaptiveSum sum(eval, cfg.max_evals);
  sum.add(std::min(a, b), std::max(a, b));
  sum.refine(cfg.abs_tol, cfg.rel_tol);
  QuadratureResult r = finish(sum, eval, cfg, true);
  r.value *= sign;
  return r;
}

QuadratureResult integrate_real_line(const ComplexIntegrand& f,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  Evaluator eval(f, true);
  return expanding(eval, 0.0, std::numeric_limits<double>::infinity(), 0.0,
                   cfg.truncation_bound, cfg);
}

QuadratureResult integrate_expanding(const ComplexIntegrand& f, double lower,
                                     double upper, double center,
                                     double half_width,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  detail::require(lower < upper, "integrate_expanding: empty domain");
  detail::require(half_width > 0.0, "integrate_expanding: half_width > 0");
  detail::require(std::isfinite(center), "integrate_expanding: center");
  Evaluator eval(f, false);
  return expanding(eval, lower, upper, center, half_width, cfg);
}

}  // namespace hybridvol
