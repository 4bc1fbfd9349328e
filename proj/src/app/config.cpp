#include "lindosc/app/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lindosc/lindblad.hpp"

namespace lindosc::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

double to_double(const std::string& v, const std::string& key, int line) {
  const std::string s = trim(v);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError("line " + std::to_string(line) + ": " + key + ": expected a finite number, got '" +
                          s + "'",
                      line);
  }
  return x;
}

long to_long(const std::string& v, const std::string& key, int line) {
  const std::string s = trim(v);
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError(
        "line " + std::to_string(line) + ": " + key + ": expected an integer, got '" + s + "'", line);
  }
  return x;
}

std::vector<double> to_list(const std::string& v, const std::string& key, int line) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(to_double(item, key, line));
  return out;
}

// Reads typed values out of one section and rejects anything left over.
class SectionReader {
 public:
  SectionReader(const std::string& name, Section* sec) : name_(name), sec_(sec) {}

  const Entry* get(const std::string& key) {
    if (!sec_) return nullptr;
    used_.insert(key);
    const auto it = sec_->find(key);
    return it == sec_->end() ? nullptr : &it->second;
  }
  std::string label(const std::string& key) const { return name_ + "." + key; }

  void real(const std::string& key, double& out) {
    if (const Entry* e = get(key)) out = to_double(e->value, label(key), e->line);
  }
  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (const Entry* e = get(key)) out = static_cast<Int>(to_long(e->value, label(key), e->line));
  }
  void finish() const {
    if (!sec_) return;
    for (const auto& [k, e] : *sec_) {
      if (!used_.count(k)) {
        throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + k +
                              "' in section [" + name_ + "]",
                          e.line);
      }
    }
  }

 private:
  std::string name_;
  Section* sec_;
  std::set<std::string> used_;
};

std::vector<Drive::Harmonic> parse_harmonics(const std::string& v, int line) {
  std::vector<Drive::Harmonic> out;
  for (const auto& item : split(v, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError(
          "line " + std::to_string(line) + ": drive.harmonics: expected 'k: re, im', got '" + item + "'",
          line);
    }
    const long k = to_long(item.substr(0, colon), "drive.harmonics", line);
    const auto parts = to_list(item.substr(colon + 1), "drive.harmonics", line);
    if (parts.size() != 2) {
      throw ConfigError("line " + std::to_string(line) + ": drive.harmonics: coefficient of k = " +
                            std::to_string(k) + " needs 're, im'",
                        line);
    }
    out.push_back({static_cast<int>(k), {parts[0], parts[1]}});
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

const char* kind_name(InitialSpec::Kind k) {
  switch (k) {
    case InitialSpec::Kind::vacuum:
      return "vacuum";
    case InitialSpec::Kind::coherent:
      return "coherent";
    case InitialSpec::Kind::thermal:
      return "thermal";
    case InitialSpec::Kind::gaussian:
      return "gaussian";
    case InitialSpec::Kind::matrix:
      return "matrix";
  }
  return "?";
}

}  // namespace

std::optional<GaussianState> InitialSpec::gaussian() const {
  switch (kind) {
    case Kind::vacuum:
      return GaussianState::coherent({});
    case Kind::coherent:
      return GaussianState::coherent(alpha);
    case Kind::thermal:
      return GaussianState::thermal(nbar / (1.0 + nbar));
    case Kind::gaussian:
      return GaussianState::from_u_alpha(u, alpha);
    case Kind::matrix:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> GridSpec::time_grid() const {
  if (!times.empty()) return times;
  std::vector<double> g;
  if (samples <= 0) return g;
  if (samples == 1) return {t_end};
  g.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) g.push_back(t_end * i / (samples - 1));
  return g;
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Section> sections;
  static const std::set<std::string> known = {"params", "drive", "initial", "grid",
                                              "husimi", "scan",  "run"};
  std::string current;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    s = trim(s);
    if (s.empty() || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError("line " + std::to_string(line) + ": malformed section header '" + s + "'",
                          line);
      }
      current = trim(s.substr(1, s.size() - 2));
      if (!known.count(current)) {
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" + current + "]",
                          line);
      }
      sections[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" + s + "'",
                        line);
    }
    if (current.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": key outside of any section", line);
    }
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key", line);
    }
    auto& sec = sections[current];
    if (sec.count(key)) {
      throw ConfigError("line " + std::to_string(line) + ": repeated key '" + key + "' (first on line " +
                            std::to_string(sec[key].line) + ")",
                        line);
    }
    sec[key] = {trim(s.substr(eq + 1)), line};
  }

  auto section = [&](const std::string& name) {
    auto it = sections.find(name);
    return SectionReader(name, it == sections.end() ? nullptr : &it->second);
  };

  RunConfig cfg = default_config();
  cfg.source = source;

  {
    auto r = section("params");
    r.real("omega", cfg.params.omega);
    r.real("mu", cfg.params.mu);
    r.real("nu", cfg.params.nu);
    r.finish();
  }
  {
    auto r = section("drive");
    std::string kind = "cosine";
    double f0 = cfg.drive.f0();
    double W = cfg.drive.Omega();
    std::vector<Drive::Harmonic> harmonics;
    int kind_line = 0;
    if (const Entry* e = r.get("kind")) {
      kind = e->value;
      kind_line = e->line;
    }
    r.real("f0", f0);
    r.real("Omega", W);
    const Entry* h = r.get("harmonics");
    if (h) harmonics = parse_harmonics(h->value, h->line);
    r.finish();
    try {
      if (kind == "none") {
        cfg.drive = Drive::none();
      } else if (kind == "cosine") {
        cfg.drive = Drive::cosine(f0, W);
      } else if (kind == "fourier") {
        if (!h) throw ConfigError("drive.kind = fourier needs drive.harmonics", kind_line);
        cfg.drive = Drive::fourier(W, harmonics);
      } else {
        throw ConfigError("line " + std::to_string(kind_line) + ": drive.kind: unknown value '" +
                              kind + "' (none | cosine | fourier)",
                          kind_line);
      }
    } catch (const InvalidParameters& e) {
      throw ConfigError(std::string("drive: ") + e.what(), kind_line);
    }
  }
  {
    auto r = section("initial");
    if (const Entry* e = r.get("kind")) {
      static const std::map<std::string, InitialSpec::Kind> kinds = {
          {"vacuum", InitialSpec::Kind::vacuum},     {"coherent", InitialSpec::Kind::coherent},
          {"thermal", InitialSpec::Kind::thermal},   {"gaussian", InitialSpec::Kind::gaussian},
          {"matrix", InitialSpec::Kind::matrix}};
      const auto it = kinds.find(e->value);
      if (it == kinds.end()) {
        throw ConfigError("line " + std::to_string(e->line) + ": initial.kind: unknown value '" +
                              e->value + "'",
                          e->line);
      }
      cfg.initial.kind = it->second;
    }
    double re = cfg.initial.alpha.real();
    double im = cfg.initial.alpha.imag();
    r.real("alpha_re", re);
    r.real("alpha_im", im);
    cfg.initial.alpha = {re, im};
    r.real("nbar", cfg.initial.nbar);
    r.real("u", cfg.initial.u);
    if (const Entry* e = r.get("matrix_file")) cfg.initial.matrix_file = e->value;
    r.finish();
  }
  {
    auto r = section("grid");
    long dim = static_cast<long>(cfg.grid.dim);
    r.integer("dim", dim);
    if (dim < 2) throw ConfigError("grid.dim must be >= 2 (got " + std::to_string(dim) + ")");
    cfg.grid.dim = static_cast<std::size_t>(dim);
    r.real("t_end", cfg.grid.t_end);
    r.integer("samples", cfg.grid.samples);
    if (const Entry* e = r.get("times")) {
      cfg.grid.times = to_list(e->value, "grid.times", e->line);
      if (cfg.grid.times.empty()) {
        throw ConfigError("line " + std::to_string(e->line) + ": grid.times: empty time grid",
                          e->line);
      }
    }
    if (const Entry* e = r.get("dt")) cfg.grid.dt = to_double(e->value, "grid.dt", e->line);
    r.integer("renorm_every", cfg.grid.renorm_every);
    r.finish();
  }
  {
    auto r = section("husimi");
    if (const Entry* e = r.get("state")) {
      if (e->value == "limit_cycle") {
        cfg.husimi.state = HusimiSpec::State::limit_cycle;
      } else if (e->value == "flow") {
        cfg.husimi.state = HusimiSpec::State::flow;
      } else {
        throw ConfigError("line " + std::to_string(e->line) + ": husimi.state: unknown value '" +
                              e->value + "' (limit_cycle | flow)",
                          e->line);
      }
    }
    r.integer("count", cfg.husimi.count);
    if (const Entry* e = r.get("times")) cfg.husimi.times = to_list(e->value, "husimi.times", e->line);
    r.integer("nx", cfg.husimi.nx);
    r.integer("np", cfg.husimi.np);
    PhaseWindow w;
    int set = 0;
    for (auto [key, field] : {std::pair{"x_min", &w.x_min}, std::pair{"x_max", &w.x_max},
                              std::pair{"p_min", &w.p_min}, std::pair{"p_max", &w.p_max}}) {
      if (const Entry* e = r.get(key)) {
        *field = to_double(e->value, r.label(key), e->line);
        ++set;
      }
    }
    if (set != 0 && set != 4) {
      throw ConfigError("husimi: give all of x_min, x_max, p_min, p_max or none of them");
    }
    if (set == 4) cfg.husimi.window = w;
    r.integer("path_samples", cfg.husimi.path_samples);
    r.finish();
  }
  {
    auto r = section("scan");
    r.real("Omega_min", cfg.scan.Omega_min);
    r.real("Omega_max", cfg.scan.Omega_max);
    r.integer("samples", cfg.scan.samples);
    r.finish();
  }
  {
    auto r = section("run");
    if (const Entry* e = r.get("seed")) {
      const long s = to_long(e->value, "run.seed", e->line);
      if (s < 0) throw ConfigError("run.seed must be >= 0", e->line);
      cfg.seed = static_cast<std::uint64_t>(s);
    }
    r.finish();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::vector<std::string> describe_config(const RunConfig& cfg) {
  std::vector<std::string> out;
  auto add = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
  add("source", cfg.source);
  add("params.omega", fmt(cfg.params.omega));
  add("params.mu", fmt(cfg.params.mu));
  add("params.nu", fmt(cfg.params.nu));
  add("params.gamma", fmt(cfg.params.gamma()));
  add("drive", cfg.drive.describe());
  add("initial.kind", kind_name(cfg.initial.kind));
  switch (cfg.initial.kind) {
    case InitialSpec::Kind::coherent:
      add("initial.alpha", fmt(cfg.initial.alpha.real()) + ", " + fmt(cfg.initial.alpha.imag()));
      break;
    case InitialSpec::Kind::thermal:
      add("initial.nbar", fmt(cfg.initial.nbar));
      break;
    case InitialSpec::Kind::gaussian:
      add("initial.u", fmt(cfg.initial.u));
      add("initial.alpha", fmt(cfg.initial.alpha.real()) + ", " + fmt(cfg.initial.alpha.imag()));
      break;
    case InitialSpec::Kind::matrix:
      add("initial.matrix_file", cfg.initial.matrix_file);
      break;
    case InitialSpec::Kind::vacuum:
      break;
  }
  add("grid.dim", std::to_string(cfg.grid.dim));
  if (cfg.grid.times.empty()) {
    add("grid.t_end", fmt(cfg.grid.t_end));
    add("grid.samples", std::to_string(cfg.grid.samples));
  } else {
    std::string ts;
    for (double t : cfg.grid.times) ts += (ts.empty() ? "" : ", ") + fmt(t);
    add("grid.times", ts);
  }
  add("grid.dt", cfg.grid.dt ? fmt(*cfg.grid.dt) : "default");
  add("grid.renorm_every", std::to_string(cfg.grid.renorm_every));
  add("husimi.state", cfg.husimi.state == HusimiSpec::State::flow ? "flow" : "limit_cycle");
  add("husimi.nx", std::to_string(cfg.husimi.nx));
  add("husimi.np", std::to_string(cfg.husimi.np));
  if (cfg.husimi.times.empty()) {
    add("husimi.count", std::to_string(cfg.husimi.count));
  } else {
    std::string ts;
    for (double t : cfg.husimi.times) ts += (ts.empty() ? "" : ", ") + fmt(t);
    add("husimi.times", ts);
  }
  if (const auto& w = cfg.husimi.window) {
    add("husimi.window", fmt(w->x_min) + ", " + fmt(w->x_max) + ", " + fmt(w->p_min) + ", " +
                             fmt(w->p_max));
  } else {
    add("husimi.window", "auto");
  }
  add("husimi.path_samples", std::to_string(cfg.husimi.path_samples));
  add("scan.Omega_min", fmt(cfg.scan.Omega_min));
  add("scan.Omega_max", fmt(cfg.scan.Omega_max));
  add("scan.samples", std::to_string(cfg.scan.samples));
  add("run.seed", std::to_string(cfg.seed));
  return out;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  std::vector<std::vector<Complex>> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    std::istringstream is(s);
    std::vector<double> nums;
    std::string tok;
    while (is >> tok) nums.push_back(to_double(tok, path, line));
    if (nums.size() % 2 != 0) {
      throw ConfigError(path + ": line " + std::to_string(line) + ": expected 're im' pairs", line);
    }
    std::vector<Complex> row;
    for (std::size_t i = 0; i < nums.size(); i += 2) row.emplace_back(nums[i], nums[i + 1]);
    rows.push_back(std::move(row));
  }
  const std::size_t d = rows.size();
  ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) {
      throw ConfigError(path + ": matrix is not square (row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " + std::to_string(d) +
                        ")");
    }
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

DensityMatrix initial_density(const RunConfig& cfg) {
  const FockDim dim(cfg.grid.dim);
  if (cfg.initial.kind == InitialSpec::Kind::matrix) {
    ComplexMatrix m = read_matrix_file(cfg.initial.matrix_file);
    if (static_cast<std::size_t>(m.rows()) != cfg.grid.dim) {
      throw ConfigError("matrix file has dimension " + std::to_string(m.rows()) +
                        " but grid.dim = " + std::to_string(cfg.grid.dim));
    }
    return DensityMatrix::from_matrix(std::move(m));
  }
  if (cfg.initial.kind == InitialSpec::Kind::vacuum) return DensityMatrix::fock(0, dim);
  if (cfg.initial.kind == InitialSpec::Kind::thermal) {
    return geometric_state(cfg.initial.nbar / (1.0 + cfg.initial.nbar), dim);
  }
  return materialize(*cfg.initial.gaussian(), dim);
}

void validate_config(const RunConfig& cfg, bool needs_dim) {
  cfg.params.validate();
  const std::vector<double> grid = cfg.grid.time_grid();
  if (grid.empty()) throw ConfigError("grid: empty time grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw ConfigError("grid: times must be >= 0 and strictly increasing");
    }
  }
  if (cfg.grid.dt && !(*cfg.grid.dt > 0.0)) throw ConfigError("grid.dt must be > 0");
  if (cfg.grid.renorm_every < 0) throw ConfigError("grid.renorm_every must be >= 0");
  if (cfg.husimi.nx < 2 || cfg.husimi.np < 2) throw ConfigError("husimi: nx and np must be >= 2");
  if (cfg.husimi.count < 1 && cfg.husimi.times.empty()) throw ConfigError("husimi.count must be >= 1");
  if (cfg.husimi.path_samples < 2) throw ConfigError("husimi.path_samples must be >= 2");
  if (cfg.initial.kind == InitialSpec::Kind::thermal && !(cfg.initial.nbar >= 0.0)) {
    throw ConfigError("initial.nbar must be >= 0");
  }
  if (cfg.initial.kind == InitialSpec::Kind::gaussian &&
      !(cfg.initial.u >= 0.0 && cfg.initial.u < 1.0)) {
    throw ConfigError("initial.u must lie in [0, 1)");
  }
  if (cfg.initial.kind == InitialSpec::Kind::matrix && cfg.initial.matrix_file.empty()) {
    throw ConfigError("initial.kind = matrix needs initial.matrix_file");
  }
  if (!needs_dim) return;

  const FockDim dim(cfg.grid.dim);
  Complex a0 = cfg.initial.alpha;
  if (cfg.initial.kind == InitialSpec::Kind::matrix) {
    a0 = expectation(ladder_ops(dim).a, initial_density(cfg));
  } else if (cfg.initial.kind == InitialSpec::Kind::vacuum ||
             cfg.initial.kind == InitialSpec::Kind::thermal) {
    a0 = {};
  }
  // Largest mean amplitude visited over the run.
  Complex widest = a0;
  const double t_end = grid.back();
  auto visit = [&](double t) {
    const Complex a = solve_alpha(t, a0, cfg.params, cfg.drive);
    if (std::abs(a) > std::abs(widest)) widest = a;
  };
  for (double t : grid) visit(t);
  constexpr int probes = 2000;
  for (int i = 0; i <= probes; ++i) visit(t_end * i / probes);
  check_truncation(widest, dim);
}

}  // namespace lindosc::app
