#pragma once
// Machine-readable (JSON) and plain-text renderings of classification runs,
// verification suites and the catalogs. The JSON layout is described by
// docs/report.schema.json; output is byte-stable for fixed settings unless
// timing is requested.

#include <string>
#include <vector>

#include "json.hpp"
#include "odeclass.hpp"
#include "papercheck.hpp"

namespace g2::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "1.0.0";
// witness texts longer than this are replaced by their hash only
inline constexpr size_t kWitnessTextLimit = 2000;

struct Settings {
  uint64_t seed = 0x5eed;
  int points = 64;
  int digits = 50;        // digits of floating values in the output, at most 50
  bool timing = false;    // include wall-clock times (breaks byte stability)
};

std::string sha256_hex(const std::string& s);
std::string mode_name(ZeroMode m);

nlohmann::ordered_json classification_json(const ClassificationReport& r, const Settings& s);
std::string classification_text(const ClassificationReport& r, const Settings& s);

nlohmann::ordered_json papercheck_json(const std::vector<check::SuiteResult>& r, const Settings& s, int threads);
std::string papercheck_text(const std::vector<check::SuiteResult>& r, const Settings& s);

struct CatalogItem {
  std::string kind;  // "ode", "coframe", "curve_family"
  std::string name;
  std::string citation;
};
const std::vector<CatalogItem>& catalog_items();
nlohmann::ordered_json catalog_json();
std::string catalog_text();

}  // namespace g2::report
