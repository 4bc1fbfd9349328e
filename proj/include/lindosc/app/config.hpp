#pragma once

// Run configuration: a sectioned key = value text file.
//
//   [params]   omega, mu, nu
//   [drive]    kind = none | cosine | fourier, f0, Omega,
//              harmonics = "k: re, im; k: re, im; ..."
//   [initial]  kind = vacuum | coherent | thermal | gaussian | matrix,
//              alpha_re, alpha_im, nbar, u, matrix_file
//   [grid]     dim, t_end, samples | times = "t0, t1, ...", dt, renorm_every
//   [husimi]   state = limit_cycle | flow, count | times, nx, np,
//              x_min, x_max, p_min, p_max, path_samples
//   [scan]     Omega_min, Omega_max, samples
//   [run]      seed
//
// '#' starts a comment anywhere, ';' only at the start of a line. Keys are
// case-sensitive; unknown sections, unknown keys and repeated keys are errors.
// Fields not mentioned keep the values of default_config().

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lindosc/errors.hpp"
#include "lindosc/fock.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/params.hpp"

namespace lindosc::app {

/// Parse or validation failure; `line` is 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct InitialSpec {
  enum class Kind { vacuum, coherent, thermal, gaussian, matrix };
  Kind kind = Kind::vacuum;
  Complex alpha;
  double nbar = 0.0;
  double u = 0.0;
  std::string matrix_file;

  /// Gaussian description of the initial state; empty for `matrix`.
  std::optional<GaussianState> gaussian() const;
};

struct GridSpec {
  std::size_t dim = 256;
  double t_end = 10.0;
  int samples = 101;
  /// Explicit times; overrides t_end/samples when non-empty.
  std::vector<double> times;
  std::optional<double> dt;
  int renorm_every = 100;

  std::vector<double> time_grid() const;
};

struct HusimiSpec {
  enum class State { limit_cycle, flow };
  State state = State::limit_cycle;
  /// Equidistant times over one drive period, used when `times` is empty.
  int count = 6;
  std::vector<double> times;
  int nx = 81;
  int np = 81;
  /// Auto-sized around the limit-cycle ellipse when unset.
  std::optional<PhaseWindow> window;
  int path_samples = 256;
};

struct ScanSpec {
  double Omega_min = 0.5;
  double Omega_max = 1.7;
  int samples = 400;
};

struct RunConfig {
  LindbladParams params{1.1, 0.6, 0.4};
  Drive drive = Drive::cosine(1.4, 1.095445);
  InitialSpec initial;
  GridSpec grid;
  HusimiSpec husimi;
  ScanSpec scan;
  std::uint64_t seed = 20240611;
  /// Where the config came from.
  std::string source = "<defaults>";
};

RunConfig default_config();

/// Parses on top of default_config(). Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::string& path);

/// Canonical `key = value` listing of every resolved field (17 digits).
std::vector<std::string> describe_config(const RunConfig& cfg);

/// Checks the physical invariants, the time grid and, when `needs_dim`,
/// truncation adequacy along the mean-amplitude path. Throws ConfigError,
/// InvalidParameters or TruncationOverflow.
void validate_config(const RunConfig& cfg, bool needs_dim);

/// Initial density for the brute-force engine (matrix files are resolved
/// relative to the working directory).
DensityMatrix initial_density(const RunConfig& cfg);

/// Reads a dim x dim complex matrix: one row per line, "re im" pairs.
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace lindosc::app
