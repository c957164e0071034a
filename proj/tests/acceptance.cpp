// One PASS/FAIL line per acceptance criterion, followed by its claims.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "papercheck.hpp"

int main(int argc, char** argv) {
  g2::check::Options opt;
  if (argc > 1) opt.threads = std::atoi(argv[1]);
  const auto& suites = g2::check::suites();
  int failed = 0;
  for (size_t i = 0; i < suites.size(); ++i) {
    auto r = g2::check::run_suite(suites[i].name, opt);
    std::printf("criterion %zu %s: %s (%d/%zu claims, %.1f s", i + 1, r.name.c_str(), r.pass() ? "PASS" : "FAIL",
                r.passed(), r.claims.size(), r.seconds);
    if (r.limit_seconds > 0) std::printf(", target %.0f s", r.limit_seconds);
    std::printf(")\n");
    for (const auto& c : r.claims)
      std::printf("    %s  %s: %s\n", c.pass ? "ok  " : "FAIL", c.id.c_str(), c.measured.c_str());
    std::fflush(stdout);
    failed += !r.pass();
  }
  std::printf("%zu/%zu criteria pass\n", suites.size() - failed, suites.size());
  return failed ? 1 : 0;
}
