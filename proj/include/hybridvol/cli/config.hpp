#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hybridvol/mc.hpp"
#include "hybridvol/models.hpp"
#include "hybridvol/quadrature.hpp"

namespace hybridvol::cli {

enum class ModelKind { bs, heston, heston_cir };

std::string_view to_string(ModelKind m);

// Malformed or invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ModelKind model = ModelKind::heston;
  HestonParams heston;
  std::optional<CirRateParams> rate;
  VanillaOption option;
  QuadratureConfig quadrature;
  std::optional<McConfig> mc;
  std::string output_path;

  // Constant rate used by the bs and heston models (heston.mu).
  double constant_rate() const { return heston.mu; }

  void validate() const;
};

// Parses and validates a JSON document. Unknown keys are rejected.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

}  // namespace hybridvol::cli
