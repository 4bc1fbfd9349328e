// Acceptance gate: one [PASS]/[FAIL] line per criterion, failing checks
// listed beneath. Exit status is non-zero when any criterion fails.

#include <cstdio>

#include "lindosc/app/validation.hpp"

int main() {
  using namespace lindosc::app;
  int failed = 0;
  for (int id = 1; id <= criterion_count; ++id) {
    const Criterion c = run_criterion(id);
    std::printf("[%s] criterion %d: %s (%.2f s, budget %.0f s)\n", c.pass() ? "PASS" : "FAIL", id,
                c.title.c_str(), c.seconds, c.budget_seconds);
    for (const auto& chk : c.checks) {
      if (!chk.pass)
        std::printf("    %s: expected %.17g actual %.17g tolerance %.3g\n", chk.key.c_str(),
                    chk.expected, chk.actual, chk.tolerance);
    }
    if (!c.within_budget()) std::printf("    runtime over budget\n");
    std::fflush(stdout);
    if (!c.pass()) ++failed;
  }
  std::printf("%d of %d criteria pass\n", criterion_count - failed, criterion_count);
  return failed == 0 ? 0 : 1;
}
