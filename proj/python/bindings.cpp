#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hybridvol/errors.hpp"
#include "hybridvol/heston.hpp"
#include "hybridvol/hybrid.hpp"
#include "hybridvol/mc.hpp"
#include "hybridvol/models.hpp"

namespace py = pybind11;
using namespace hybridvol;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heston and Heston-CIR option pricing";

  static py::exception<NumericalError> numerical(m, "NumericalError",
                                                 PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    }
  });

  py::enum_<OptionKind>(m, "OptionKind")
      .value("call", OptionKind::call)
      .value("put", OptionKind::put);

  py::class_<HestonParams>(m, "HestonParams")
      .def(py::init([](double kappa, double theta, double sigma, double rho,
                       double v0, double mu, double lambda_) {
             HestonParams p;
             p.kappa = kappa;
             p.theta = theta;
             p.sigma = sigma;
             p.rho = rho;
             p.v0 = v0;
             p.mu = mu;
             p.lambda = lambda_;
             p.validate();
             return p;
           }),
           "kappa"_a, "theta"_a, "sigma"_a, "rho"_a, "v0"_a, "mu"_a = 0.0,
           "lambda_"_a = 0.0)
      .def_readwrite("kappa", &HestonParams::kappa)
      .def_readwrite("theta", &HestonParams::theta)
      .def_readwrite("sigma", &HestonParams::sigma)
      .def_readwrite("rho", &HestonParams::rho)
      .def_readwrite("v0", &HestonParams::v0)
      .def_readwrite("mu", &HestonParams::mu)
      .def_readwrite("lambda_", &HestonParams::lambda)
      .def("__repr__", [](const HestonParams& p) {
        return py::str("HestonParams(kappa={!r}, theta={!r}, sigma={!r}, rho={!r}, "
                       "v0={!r})")
            .format(p.kappa, p.theta, p.sigma, p.rho, p.v0);
      });

  py::class_<CirRateParams>(m, "CirRateParams")
      .def(py::init([](double kappa_r, double theta_r, double sigma_r, double r0) {
             CirRateParams rp{kappa_r, theta_r, sigma_r, r0};
             rp.validate();
             return rp;
           }),
           "kappa_r"_a, "theta_r"_a, "sigma_r"_a, "r0"_a)
      .def_readwrite("kappa_r", &CirRateParams::kappa_r)
      .def_readwrite("theta_r", &CirRateParams::theta_r)
      .def_readwrite("sigma_r", &CirRateParams::sigma_r)
      .def_readwrite("r0", &CirRateParams::r0);

  py::class_<VanillaOption>(m, "VanillaOption")
      .def(py::init([](double s0, double strike, double maturity, OptionKind kind) {
             VanillaOption o{s0, strike, maturity, kind};
             o.validate();
             return o;
           }),
           "s0"_a, "strike"_a, "maturity"_a, "kind"_a = OptionKind::call)
      .def_readwrite("s0", &VanillaOption::s0)
      .def_readwrite("strike", &VanillaOption::strike)
      .def_readwrite("maturity", &VanillaOption::maturity)
      .def_readwrite("kind", &VanillaOption::kind);

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("max_evals", &QuadratureConfig::max_evals)
      .def_readwrite("truncation_bound", &QuadratureConfig::truncation_bound);

  py::class_<PricingResult>(m, "PricingResult")
      .def_readonly("price", &PricingResult::price)
      .def_readonly("error_estimate", &PricingResult::error_estimate)
      .def_readonly("evaluations", &PricingResult::evaluations)
      .def_readonly("imag_residual", &PricingResult::imag_residual);

  py::class_<McConfig>(m, "McConfig")
      .def(py::init([](std::size_t paths, std::size_t steps, std::uint64_t seed,
                       bool antithetic, unsigned threads) {
             McConfig c{paths, steps, seed, antithetic, threads};
             c.validate();
             return c;
           }),
           "paths"_a = 100000, "steps"_a = 500, "seed"_a = 20240611,
           "antithetic"_a = false, "threads"_a = 0)
      .def_readwrite("paths", &McConfig::paths)
      .def_readwrite("steps", &McConfig::steps)
      .def_readwrite("seed", &McConfig::seed)
      .def_readwrite("antithetic", &McConfig::antithetic)
      .def_readwrite("threads", &McConfig::threads);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("mean", &McEstimate::mean)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("paths", &McEstimate::paths)
      .def_readonly("seed", &McEstimate::seed);

  m.def("risk_neutral_map", [](double kappa, double theta, double lambda_) {
    const auto r = risk_neutral_map(kappa, theta, lambda_);
    return py::make_tuple(r.kappa, r.theta);
  }, "kappa"_a, "theta"_a, "lambda_"_a);
  m.def("feller_satisfied", [](const HestonParams& p) { return feller_check(p).satisfied; });
  m.def("feller_satisfied",
        [](const CirRateParams& rp) { return feller_check(rp).satisfied; });
  m.def("bs_price", &bs_price, "option"_a, "r"_a, "vol"_a);
  m.def("deterministic_average_rate", &deterministic_average_rate, "rate"_a, "T"_a);

  m.def("heston_price", &heston_price, "option"_a, "params"_a, "r"_a,
        "quadrature"_a = QuadratureConfig{});
  m.def("heston_call_price", &heston_call_price, "option"_a, "params"_a, "r"_a,
        "quadrature"_a = QuadratureConfig{});
  m.def("price_via_density", &price_via_density, "option"_a, "params"_a, "r"_a,
        "quadrature"_a = QuadratureConfig{});
  m.def("marginal_density",
        [](double x, double T, const HestonParams& p, const QuadratureConfig& cfg) {
          return marginal_density(LogReturn{x}, T, p, cfg);
        },
        "x"_a, "T"_a, "params"_a, "quadrature"_a = QuadratureConfig{});

  m.def("cir_bond_price", &cir_bond_price, "rate"_a, "T"_a);
  m.def("hybrid_price", &hybrid_price, "option"_a, "params"_a, "rate"_a,
        "quadrature"_a = QuadratureConfig{});
  m.def("hybrid_call_price", &hybrid_call_price, "option"_a, "params"_a, "rate"_a,
        "quadrature"_a = QuadratureConfig{});

  m.def("mc_price_heston_euler",
        [](const VanillaOption& o, const HestonParams& p, double r, const McConfig& mc) {
          py::gil_scoped_release release;
          return mc_price_heston_euler(o, p, r, mc);
        },
        "option"_a, "params"_a, "r"_a, "mc"_a);
  m.def("mc_price_hybrid",
        [](const VanillaOption& o, const HestonParams& p, const CirRateParams& rp,
           const McConfig& mc) {
          py::gil_scoped_release release;
          return mc_price_hybrid(o, p, rp, mc);
        },
        "option"_a, "params"_a, "rate"_a, "mc"_a);
  m.def("simulate_heston_logreturns",
        [](const HestonParams& p, double r, double T, const McConfig& mc) {
          std::vector<double> xs;
          {
            py::gil_scoped_release release;
            xs = simulate_heston_logreturns(p, r, T, mc);
          }
          py::array_t<double> out(static_cast<py::ssize_t>(xs.size()));
          std::copy(xs.begin(), xs.end(), out.mutable_data());
          return out;
        },
        "params"_a, "r"_a, "T"_a, "mc"_a);
}
