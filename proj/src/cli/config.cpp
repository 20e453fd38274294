#include "hybridvol/cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "hybridvol/errors.hpp"

namespace hybridvol::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

const json& object_at(const json& parent, const char* key) {
  if (!parent.contains(key)) {
    throw ConfigError(std::string("missing required block '") + key + "'");
  }
  const json& obj = parent.at(key);
  if (!obj.is_object()) {
    throw ConfigError(std::string("'") + key + "' must be an object");
  }
  return obj;
}

double number(const json& obj, const char* where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(std::string("missing ") + where + "." + key);
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  }
  return v.get<double>();
}

double number_or(const json& obj, const char* where, const char* key,
                 double fallback) {
  return obj.contains(key) ? number(obj, where, key) : fallback;
}

template <class Int>
Int count_or(const json& obj, const char* where, const char* key,
             Int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() ||
      (!v.is_number_unsigned() && v.get<long long>() < 0)) {
    throw ConfigError(std::string(where) + "." + key +
                      " must be a non-negative integer");
  }
  return v.get<Int>();
}

HestonParams parse_heston(const json& j) {
  reject_unknown(j, "heston",
                 {"mu", "kappa", "theta", "sigma", "rho", "v0", "lambda"});
  HestonParams p;
  p.mu = number_or(j, "heston", "mu", 0.0);
  p.kappa = number(j, "heston", "kappa");
  p.theta = number(j, "heston", "theta");
  p.sigma = number(j, "heston", "sigma");
  p.rho = number(j, "heston", "rho");
  p.v0 = number(j, "heston", "v0");
  p.lambda = number_or(j, "heston", "lambda", 0.0);
  return p;
}

CirRateParams parse_rate(const json& j) {
  reject_unknown(j, "rate", {"kappa_r", "theta_r", "sigma_r", "r0"});
  CirRateParams rp;
  rp.kappa_r = number(j, "rate", "kappa_r");
  rp.theta_r = number(j, "rate", "theta_r");
  rp.sigma_r = number(j, "rate", "sigma_r");
  rp.r0 = number(j, "rate", "r0");
  return rp;
}

VanillaOption parse_option(const json& j) {
  reject_unknown(j, "option", {"s0", "strike", "maturity", "kind"});
  VanillaOption opt;
  opt.s0 = number(j, "option", "s0");
  opt.strike = number(j, "option", "strike");
  opt.maturity = number(j, "option", "maturity");
  if (j.contains("kind")) {
    const json& k = j.at("kind");
    if (k == "call") {
      opt.kind = OptionKind::call;
    } else if (k == "put") {
      opt.kind = OptionKind::put;
    } else {
      throw ConfigError("option.kind must be \"call\" or \"put\"");
    }
  }
  return opt;
}

QuadratureConfig parse_quadrature(const json& j) {
  reject_unknown(j, "quadrature",
                 {"abs_tol", "rel_tol", "max_evals", "truncation_bound"});
  QuadratureConfig q;
  q.abs_tol = number_or(j, "quadrature", "abs_tol", q.abs_tol);
  q.rel_tol = number_or(j, "quadrature", "rel_tol", q.rel_tol);
  q.max_evals = count_or<std::int64_t>(j, "quadrature", "max_evals",
                                       q.max_evals);
  q.truncation_bound =
      number_or(j, "quadrature", "truncation_bound", q.truncation_bound);
  return q;
}

McConfig parse_mc(const json& j) {
  reject_unknown(j, "mc", {"paths", "steps", "seed", "antithetic", "threads"});
  McConfig mc;
  mc.paths = count_or<std::size_t>(j, "mc", "paths", mc.paths);
  mc.steps = count_or<std::size_t>(j, "mc", "steps", mc.steps);
  mc.seed = count_or<std::uint64_t>(j, "mc", "seed", mc.seed);
  mc.threads = count_or<unsigned>(j, "mc", "threads", mc.threads);
  if (j.contains("antithetic")) {
    if (!j.at("antithetic").is_boolean()) {
      throw ConfigError("mc.antithetic must be a boolean");
    }
    mc.antithetic = j.at("antithetic").get<bool>();
  }
  return mc;
}

}  // namespace

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::bs:
      return "bs";
    case ModelKind::heston:
      return "heston";
    case ModelKind::heston_cir:
      return "heston_cir";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (model == ModelKind::heston_cir && !rate) {
    throw ConfigError("model heston_cir requires a 'rate' block");
  }
  try {
    heston.validate();
    if (rate) rate->validate();
    option.validate();
    quadrature.validate();
    if (mc) mc->validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  try {
    reject_unknown(doc, "config",
                   {"model", "heston", "rate", "option", "quadrature", "mc",
                    "output_path"});
    if (!doc.contains("model") || !doc.at("model").is_string()) {
      throw ConfigError("missing string field 'model'");
    }
    const auto model = doc.at("model").get<std::string>();
    if (model == "bs") {
      cfg.model = ModelKind::bs;
    } else if (model == "heston") {
      cfg.model = ModelKind::heston;
    } else if (model == "heston_cir") {
      cfg.model = ModelKind::heston_cir;
    } else {
      throw ConfigError("model must be one of bs, heston, heston_cir");
    }
    cfg.heston = parse_heston(object_at(doc, "heston"));
    if (doc.contains("rate")) cfg.rate = parse_rate(object_at(doc, "rate"));
    cfg.option = parse_option(object_at(doc, "option"));
    if (doc.contains("quadrature")) {
      cfg.quadrature = parse_quadrature(object_at(doc, "quadrature"));
    }
    if (doc.contains("mc")) cfg.mc = parse_mc(object_at(doc, "mc"));
    if (doc.contains("output_path")) {
      if (!doc.at("output_path").is_string()) {
        throw ConfigError("output_path must be a string");
      }
      cfg.output_path = doc.at("output_path").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace hybridvol::cli
