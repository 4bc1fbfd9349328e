// lindosc: command-line front end.
//
//   lindosc <evolve|husimi|scan|validate|steady-state> [--config PATH]
//           [--out DIR] [--dim N] [--quiet]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lindosc/app/commands.hpp"
#include "lindosc/app/config.hpp"

int main(int argc, char** argv) {
  using namespace lindosc::app;

  CLI::App cli{"Driven damped quantum oscillator under Lindblad dynamics"};
  cli.set_version_flag("--version", std::string(LINDOSC_VERSION));
  cli.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::size_t dim = 0;
  bool quiet = false;

  const char* commands[][2] = {
      {"evolve", "Integrate the master equation; writes trajectory.tsv"},
      {"husimi", "Husimi grids over one cycle; writes husimi_NNN.tsv and ellipse.tsv"},
      {"scan", "Resonance scan of the limit-cycle amplitude; writes scan.tsv"},
      {"validate", "Run every cross-check; writes validate.tsv"},
      {"steady-state", "Thermal fixed point; writes steady_state.tsv"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = cli.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (created if missing)");
    sub->add_option("--dim", dim, "Override grid.dim")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "Suppress progress output");
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (dim > 0) cfg.grid.dim = dim;
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (e.line() > 0) std::cerr << " (" << config_path << ":" << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }

  CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.quiet = quiet;
  return run_command(cli.get_subcommands().front()->get_name(), cfg, ctx);
}
