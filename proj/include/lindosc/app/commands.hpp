#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lindosc/app/config.hpp"

namespace lindosc::app {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config = 2, exit_diverged = 3 };

struct CommandContext {
  std::filesystem::path out_dir = ".";
  bool quiet = false;
  std::ostream* out = nullptr;  // progress and reports; std::cout when null
  std::ostream* err = nullptr;  // warnings and errors; std::cerr when null
};

/// trajectory.tsv: integrator observables beside the closed-form mean values.
int cmd_evolve(const RunConfig& cfg, const CommandContext& ctx);
/// husimi_NNN.tsv per time plus ellipse.tsv.
int cmd_husimi(const RunConfig& cfg, const CommandContext& ctx);
/// scan.tsv: Omega, A_q, phi_q, n-bar with a peak summary footer.
int cmd_scan(const RunConfig& cfg, const CommandContext& ctx);
/// validate.tsv: key, expected, actual, tolerance, pass for every check.
int cmd_validate(const RunConfig& cfg, const CommandContext& ctx);
/// steady_state.tsv: thermal populations and their mean.
int cmd_steady_state(const RunConfig& cfg, const CommandContext& ctx);

/// Dispatches by name and maps failures to exit codes: configuration and
/// truncation errors -> 2, divergence -> 3.
int run_command(const std::string& name, const RunConfig& cfg, const CommandContext& ctx);

/// Window holding the whole limit-cycle ellipse with `margin` Husimi widths
/// on every side.
PhaseWindow limit_cycle_window(const LindbladParams& params, const Drive& drive, int nx, int np,
                               double margin = 7.0);

}  // namespace lindosc::app
