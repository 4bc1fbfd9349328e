#pragma once

// Cross-checks between the brute-force engine, the closed-form solutions and
// independent reference computations. Each criterion carries fixed
// parameters, tolerances and a runtime budget.

#include <cstdint>
#include <string>
#include <vector>

namespace lindosc::app {

struct Check {
  std::string key;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// |actual - expected| <= tol.
Check within(std::string key, double expected, double actual, double tol);
/// actual <= bound, with expected reported as 0.
Check at_most(std::string key, double actual, double bound);
/// actual >= bound.
Check at_least(std::string key, double actual, double bound);

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;

  bool numerics_pass() const;
  bool within_budget() const { return seconds <= budget_seconds; }
  bool pass() const { return numerics_pass() && within_budget(); }
};

struct SuiteOptions {
  /// Seeds every randomized input.
  std::uint64_t seed = 20240611;
};

constexpr int criterion_count = 10;

/// Runs criterion `id` in 1..criterion_count and records its wall time.
Criterion run_criterion(int id, const SuiteOptions& opts = {});

std::vector<Criterion> run_suite(const SuiteOptions& opts = {});

}  // namespace lindosc::app
