#include <iostream>

#include <CLI11.hpp>

#include "hybridvol/cli/commands.hpp"

namespace cli = hybridvol::cli;

int main(int argc, char** argv) {
  CLI::App app{"Vanilla option pricing under Heston volatility and CIR rates"};
  app.require_subcommand(1);

  cli::CommandOptions opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", opts.out, "output file (default: output_path or stdout)");
    sub->add_option("--seed", opts.seed, "override mc.seed");
    sub->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
  };

  auto* price = app.add_subcommand("price", "price one option, print a JSON record");
  add_common(price);
  auto* curve = app.add_subcommand("curve", "strike sweep of BS, Heston and hybrid prices");
  add_common(curve);
  curve->add_option("--strikes", opts.strikes, "lo:hi:n (default 60:140:81)");
  auto* density = app.add_subcommand("density", "logreturn density on a grid");
  add_common(density);
  density->add_option("--xrange", opts.xrange, "lo:hi:n (default -1:1:401)");
  auto* verify = app.add_subcommand("verify", "analytic price vs Monte Carlo");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_code::bad_config;
  }

  if (price->parsed()) return cli::cmd_price(opts, std::cout, std::cerr);
  if (curve->parsed()) return cli::cmd_curve(opts, std::cout, std::cerr);
  if (density->parsed()) return cli::cmd_density(opts, std::cout, std::cerr);
  return cli::cmd_verify(opts, std::cout, std::cerr);
}
