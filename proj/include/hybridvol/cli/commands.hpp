#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridvol/cli/config.hpp"

namespace hybridvol::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int bad_config = 2;
inline constexpr int numerical = 3;
inline constexpr int unwritable = 4;
inline constexpr int verification = 5;
}  // namespace exit_code

// "lo:hi:n", n >= 2 evenly spaced points including both ends.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 2;

  std::vector<double> values() const;
};

GridSpec parse_grid(const std::string& text);

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> strikes;
  std::optional<std::string> xrange;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

struct CurveRow {
  double strike = 0.0;
  double bs_r0 = 0.0;
  double bs_theta_r = 0.0;
  double heston_r0 = 0.0;
  double heston_theta_r = 0.0;
  double hybrid = 0.0;
};

// Price columns of the strike sweep. Requires cfg.rate.
std::vector<CurveRow> compute_curve(const RunConfig& cfg,
                                    std::span<const double> strikes);

struct DensityRow {
  double x = 0.0;
  double density = 0.0;
};

std::vector<DensityRow> compute_density(const RunConfig& cfg,
                                        std::span<const double> xs);

double trapezoid(std::span<const DensityRow> rows);

struct VerifyReport {
  double analytic = 0.0;
  double mc_mean = 0.0;
  double std_error = 0.0;
  double z = 0.0;  // (mc_mean - analytic) / std_error
};

VerifyReport compute_verify(const RunConfig& cfg);

// Formats with 12 significant digits, as used in every CSV field.
std::string format_field(double v);

std::string curve_csv(std::span<const CurveRow> rows);
std::string density_csv(std::span<const DensityRow> rows);

// Subcommand drivers. Each returns the process exit code and writes
// diagnostics to err.
int cmd_price(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_curve(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_density(const CommandOptions& o, std::ostream& out,
                std::ostream& err);
int cmd_verify(const CommandOptions& o, std::ostream& out, std::ostream& err);

}  // namespace hybridvol::cli
