#pragma once
// Named verification suites. Each suite runs a group of identity checks and
// returns one claim per check with the measured quantity.

#include <cstdint>
#include <string>
#include <vector>

namespace g2::check {

struct Claim {
  std::string id;
  bool pass = false;
  std::string measured;
};

struct SuiteResult {
  std::string name;
  std::string title;
  std::vector<Claim> claims;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no runtime target
  bool pass() const;
  int passed() const;
};

struct Options {
  uint64_t seed = 0x5eed;
  int points = 64;   // sample points of probabilistic zero tests
  int threads = 1;   // suites run concurrently by run_suites
};

struct SuiteInfo {
  std::string name;
  std::string title;
  double limit_seconds;
};
const std::vector<SuiteInfo>& suites();
bool is_suite(const std::string& name);

// throws DomainError on an unknown name; a claim that throws is recorded as
// FAIL with the exception text
SuiteResult run_suite(const std::string& name, const Options& opt = {});
// "all" or one name; results in catalog order
std::vector<SuiteResult> run_suites(const std::string& which, const Options& opt = {});

}  // namespace g2::check
