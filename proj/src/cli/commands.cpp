#include "hybridvol/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "hybridvol/errors.hpp"
#include "hybridvol/heston.hpp"
#include "hybridvol/hybrid.hpp"
#include "hybridvol/mc.hpp"

namespace hybridvol::cli {

namespace {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig load_with_overrides(const CommandOptions& o) {
  RunConfig cfg = load_config(o.config_path);
  if (cfg.mc) {
    if (o.seed) cfg.mc->seed = *o.seed;
    if (o.threads) cfg.mc->threads = *o.threads;
  }
  return cfg;
}

void warn_feller(const RunConfig& cfg, std::ostream& err) {
  const auto report = [&](const char* what, const FellerReport& f) {
    if (!f.satisfied) {
      err << fmt::format(
          "warning: Feller condition fails for {} (2 kappa theta = {:.6g} < "
          "sigma^2 = {:.6g})\n",
          what, f.lhs, f.rhs);
    }
  };
  if (cfg.model != ModelKind::bs) report("variance", feller_check(cfg.heston));
  if (cfg.rate && cfg.model == ModelKind::heston_cir) {
    report("rate", feller_check(*cfg.rate));
  }
}

const CirRateParams& require_rate(const RunConfig& cfg, const char* what) {
  if (!cfg.rate) {
    throw ConfigError(std::string(what) + " requires a 'rate' block");
  }
  return *cfg.rate;
}

std::string destination(const CommandOptions& o, const RunConfig& cfg) {
  if (o.out) return *o.out;
  return cfg.output_path;
}

void emit(const std::string& path, const std::string& text,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw OutputError("write to '" + path + "' failed");
}

// Shared error-to-exit-code mapping for every subcommand.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << '\n';
    return exit_code::bad_config;
  } catch (const ParameterError& e) {
    err << "error: parameters: " << e.what() << '\n';
    return exit_code::bad_config;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return exit_code::numerical;
  } catch (const OutputError& e) {
    err << "error: output: " << e.what() << '\n';
    return exit_code::unwritable;
  }
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> v(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    v[i] = lo + step * static_cast<double>(i);
  }
  v.back() = hi;
  return v;
}

GridSpec parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw ConfigError("grid '" + text + "' is not of the form lo:hi:n");
  }
  GridSpec g;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, c1);
    const std::string hi = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string n = text.substr(c2 + 1);
    g.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    g.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    const long long count = std::stoll(n, &used);
    if (used != n.size() || count < 2) throw std::invalid_argument(n);
    g.points = static_cast<std::size_t>(count);
  } catch (const std::logic_error&) {
    throw ConfigError("grid '" + text +
                      "' must be lo:hi:n with finite numbers and n >= 2");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi)) {
    throw ConfigError("grid '" + text + "' needs finite lo < hi");
  }
  return g;
}

std::string format_field(double v) { return fmt::format("{:.12g}", v); }

std::vector<CurveRow> compute_curve(const RunConfig& cfg,
                                    std::span<const double> strikes) {
  const CirRateParams& rp = require_rate(cfg, "curve");
  const double vol = std::sqrt(cfg.heston.v0);
  std::vector<CurveRow> rows;
  rows.reserve(strikes.size());
  for (double k : strikes) {
    VanillaOption opt = cfg.option;
    opt.strike = k;
    CurveRow row;
    row.strike = k;
    row.bs_r0 = bs_price(opt, rp.r0, vol);
    row.bs_theta_r = bs_price(opt, rp.theta_r, vol);
    row.heston_r0 = heston_price(opt, cfg.heston, rp.r0, cfg.quadrature).price;
    row.heston_theta_r =
        heston_price(opt, cfg.heston, rp.theta_r, cfg.quadrature).price;
    row.hybrid = hybrid_price(opt, cfg.heston, rp, cfg.quadrature).price;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DensityRow> compute_density(const RunConfig& cfg,
                                        std::span<const double> xs) {
  std::vector<DensityRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    rows.push_back({x, marginal_density(LogReturn{x}, cfg.option.maturity,
                                        cfg.heston, cfg.quadrature)});
  }
  return rows;
}

double trapezoid(std::span<const DensityRow> rows) {
  double sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    sum += 0.5 * (rows[i].density + rows[i - 1].density) *
           (rows[i].x - rows[i - 1].x);
  }
  return sum;
}

VerifyReport compute_verify(const RunConfig& cfg) {
  if (!cfg.mc) throw ConfigError("verify requires an 'mc' block");
  const McConfig& mc = *cfg.mc;
  const double r = cfg.constant_rate();
  VerifyReport rep;
  McEstimate est;
  switch (cfg.model) {
    case ModelKind::bs: {
      const double vol = std::sqrt(cfg.heston.v0);
      rep.analytic = bs_price(cfg.option, r, vol);
      est = mc_price_black_scholes(cfg.option, r, vol, mc);
      break;
    }
    case ModelKind::heston:
      rep.analytic =
          heston_price(cfg.option, cfg.heston, r, cfg.quadrature).price;
      est = mc_price_heston_euler(cfg.option, cfg.heston, r, mc);
      break;
    case ModelKind::heston_cir: {
      const CirRateParams& rp = require_rate(cfg, "heston_cir");
      rep.analytic =
          hybrid_price(cfg.option, cfg.heston, rp, cfg.quadrature).price;
      est = mc_price_hybrid(cfg.option, cfg.heston, rp, mc, cfg.quadrature);
      break;
    }
  }
  rep.mc_mean = est.mean;
  rep.std_error = est.std_error;
  const double diff = rep.mc_mean - rep.analytic;
  if (rep.std_error > 0.0) {
    rep.z = diff / rep.std_error;
  } else {
    rep.z = diff == 0.0 ? 0.0 : std::copysign(
                                    std::numeric_limits<double>::infinity(),
                                    diff);
  }
  return rep;
}

std::string curve_csv(std::span<const CurveRow> rows) {
  std::string s = "strike,bs_r0,bs_theta_r,heston_r0,heston_theta_r,hybrid\n";
  for (const auto& r : rows) {
    s += fmt::format("{},{},{},{},{},{}\n", format_field(r.strike),
                     format_field(r.bs_r0), format_field(r.bs_theta_r),
                     format_field(r.heston_r0), format_field(r.heston_theta_r),
                     format_field(r.hybrid));
  }
  return s;
}

std::string density_csv(std::span<const DensityRow> rows) {
  std::string s = "x,density\n";
  for (const auto& r : rows) {
    s += fmt::format("{},{}\n", format_field(r.x), format_field(r.density));
  }
  s += fmt::format("# trapezoid_integral={}\n", format_field(trapezoid(rows)));
  return s;
}

int cmd_price(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(o);
    warn_feller(cfg, err);
    const auto start = std::chrono::steady_clock::now();
    PricingResult res;
    switch (cfg.model) {
      case ModelKind::bs:
        res.price =
            bs_price(cfg.option, cfg.constant_rate(), std::sqrt(cfg.heston.v0));
        break;
      case ModelKind::heston:
        res = heston_price(cfg.option, cfg.heston, cfg.constant_rate(),
                           cfg.quadrature);
        break;
      case ModelKind::heston_cir:
        res = hybrid_price(cfg.option, cfg.heston, *cfg.rate, cfg.quadrature);
        break;
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    nlohmann::ordered_json rec;
    rec["model"] = to_string(cfg.model);
    rec["price"] = res.price;
    rec["error_estimate"] = res.error_estimate;
    rec["evaluations"] = res.evaluations;
    rec["wall_time"] = elapsed.count();
    out << rec.dump() << '\n';
    return exit_code::ok;
  });
}

int cmd_curve(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(o);
    require_rate(cfg, "curve");
    const GridSpec grid = parse_grid(o.strikes.value_or("60:140:81"));
    warn_feller(cfg, err);
    const auto strikes = grid.values();
    const auto rows = compute_curve(cfg, strikes);
    emit(destination(o, cfg), curve_csv(rows), out);
    return exit_code::ok;
  });
}

int cmd_density(const CommandOptions& o, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(o);
    const GridSpec grid = parse_grid(o.xrange.value_or("-1:1:401"));
    warn_feller(cfg, err);
    const auto xs = grid.values();
    const auto rows = compute_density(cfg, xs);
    emit(destination(o, cfg), density_csv(rows), out);
    return exit_code::ok;
  });
}

int cmd_verify(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_with_overrides(o);
    if (!cfg.mc) throw ConfigError("verify requires an 'mc' block");
    warn_feller(cfg, err);
    const VerifyReport rep = compute_verify(cfg);
    const bool passed = std::abs(rep.z) <= 3.0;
    nlohmann::ordered_json rec;
    rec["model"] = to_string(cfg.model);
    rec["analytic"] = rep.analytic;
    rec["mc"] = rep.mc_mean;
    rec["std_error"] = rep.std_error;
    rec["z"] = std::isfinite(rep.z) ? nlohmann::ordered_json(rep.z)
                                    : nlohmann::ordered_json(rep.z > 0 ? "inf" : "-inf");
    rec["paths"] = cfg.mc->paths;
    rec["seed"] = cfg.mc->seed;
    rec["passed"] = passed;
    out << rec.dump() << '\n';
    if (!passed) {
      err << fmt::format("verification failed: |z| = {:.3f} > 3\n",
                         std::abs(rep.z));
      return exit_code::verification;
    }
    return exit_code::ok;
  });
}

}  // namespace hybridvol::cli
