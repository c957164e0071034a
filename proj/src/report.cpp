#include "report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "errors.hpp"

namespace g2::report {

using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr)) throw Error("sha256 failed");
  std::ostringstream o;
  for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return o.str();
}

std::string mode_name(ZeroMode m) {
  switch (m) {
    case ZeroMode::Exact: return "exact";
    case ZeroMode::ExactAndProbabilistic: return "exact+probabilistic";
    case ZeroMode::Probabilistic: return "probabilistic";
  }
  return "unknown";
}

namespace {

double rounded(double v, int digits) {
  std::ostringstream o;
  o << std::setprecision(std::clamp(digits, 1, 15)) << v;
  return std::stod(o.str());
}

json zero_json(const ZeroTest& t, const Settings& s) {
  json j;
  j["mode"] = mode_name(t.mode);
  j["points"] = t.points;
  if (t.mode == ZeroMode::Exact)
    j["log2_failure_bound"] = nullptr;
  else
    j["log2_failure_bound"] = rounded(t.log2_bound, s.digits);
  return j;
}

json witness_json(const Expr& e) {
  std::string text = e.str();
  json j;
  j["sha256"] = sha256_hex(text);
  j["length"] = text.size();
  if (text.size() <= kWitnessTextLimit)
    j["text"] = text;
  else
    j["text"] = nullptr;
  return j;
}

json settings_json(const Settings& s) {
  json j;
  j["seed"] = s.seed;
  j["points"] = s.points;
  j["digits"] = s.digits;
  return j;
}

}  // namespace

json classification_json(const ClassificationReport& r, const Settings& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "classification";
  j["engine_version"] = kEngineVersion;
  j["settings"] = settings_json(s);
  j["ode"] = {{"name", r.name}, {"order", 7}, {"rhs", r.rhs}};
  json w = json::array();
  for (int i = 0; i < 5; ++i) {
    json e;
    e["name"] = "W" + std::to_string(i + 1);
    e["vanishes"] = r.wunschmann.vanishes(i);
    e["zero_test"] = zero_json(r.wunschmann.test[i], s);
    e["witness"] = witness_json(r.wunschmann.W[i]);
    w.push_back(e);
  }
  j["wunschmann"] = w;
  j["admits_geometry"] = r.admits_geometry();
  json fg;
  fg["applicable"] = r.fg.applicable;
  fg["type"] = r.fg.label();
  if (r.fg.applicable) {
    fg["reason"] = nullptr;
    fg["classes"] = r.fg.classes;
    json ws = json::array();
    for (const Witness* x : {&r.fg.lambda, &r.fg.tau2, &r.fg.tau3, &r.fg.v7, &r.fg.v11}) {
      json e;
      e["name"] = x->name;
      e["vanishes"] = x->vanishes();
      e["zero_test"] = zero_json(x->test, s);
      e["witness"] = witness_json(x->expr);
      ws.push_back(e);
    }
    fg["witnesses"] = ws;
    fg["dTheta_V3"] = r.fg.v3;
  } else {
    fg["reason"] = r.fg.reason;
    fg["classes"] = json::array();
    fg["witnesses"] = json::array();
    fg["dTheta_V3"] = nullptr;
  }
  j["fernandez_gray"] = fg;
  if (s.timing) j["timing_seconds"] = r.seconds;
  return j;
}

std::string classification_text(const ClassificationReport& r, const Settings& s) {
  std::ostringstream o;
  o << "ode: " << r.name << "\n";
  o << "y7 = " << r.rhs << "\n";
  for (int i = 0; i < 5; ++i) {
    const auto& t = r.wunschmann.test[i];
    o << "W" << i + 1 << ": " << (t.zero ? "zero" : "nonzero") << " (" << mode_name(t.mode);
    if (t.mode != ZeroMode::Exact) o << ", " << t.points << " points";
    o << ")\n";
  }
  if (r.admits_geometry())
    o << "GL(2) structure: yes\n";
  else
    o << "GL(2) structure: no\n";
  o << "Fernandez-Gray type: " << r.fg.label() << "\n";
  if (!r.fg.applicable) {
    o << "  " << r.fg.reason << "\n";
  } else {
    for (const Witness* x : {&r.fg.lambda, &r.fg.tau2, &r.fg.tau3, &r.fg.v7, &r.fg.v11})
      o << "  " << x->name << ": " << (x->vanishes() ? "zero" : "nonzero") << "\n";
    o << "  dTheta_V3: " << r.fg.v3 << "\n";
  }
  if (s.timing) o << "time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
  return o.str();
}

json papercheck_json(const std::vector<check::SuiteResult>& rs, const Settings& s, int threads) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "papercheck";
  j["engine_version"] = kEngineVersion;
  j["settings"] = settings_json(s);
  j["settings"]["threads"] = threads;
  json arr = json::array();
  int passed = 0;
  for (const auto& r : rs) {
    json e;
    e["name"] = r.name;
    e["title"] = r.title;
    e["pass"] = r.pass();
    json cs = json::array();
    for (const auto& c : r.claims) cs.push_back({{"id", c.id}, {"pass", c.pass}, {"measured", c.measured}});
    e["claims"] = cs;
    if (s.timing) {
      e["seconds"] = r.seconds;
      e["limit_seconds"] = r.limit_seconds;
    }
    passed += r.pass();
    arr.push_back(e);
  }
  j["suites"] = arr;
  j["passed"] = passed;
  j["total"] = rs.size();
  return j;
}

std::string papercheck_text(const std::vector<check::SuiteResult>& rs, const Settings& s) {
  std::ostringstream o;
  int passed = 0;
  for (const auto& r : rs) {
    o << "[" << r.name << "] " << r.title << "\n";
    for (const auto& c : r.claims) o << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.measured << "\n";
    o << r.name << ": " << r.passed() << "/" << r.claims.size() << " PASS";
    if (s.timing) o << " in " << std::fixed << std::setprecision(1) << r.seconds << " s";
    if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) o << " (over the " << r.limit_seconds << " s target)";
    o << "\n";
    passed += r.pass();
  }
  if (rs.size() > 1) o << passed << "/" << rs.size() << " suites pass\n";
  return o.str();
}

const std::vector<CatalogItem>& catalog_items() {
  static const std::vector<CatalogItem> items = [] {
    std::vector<CatalogItem> v;
    for (const auto& e : ode_catalog_entries()) v.push_back({"ode", e.name, e.citation});
    v.push_back({"coframe", "flat", "constant coframe of the flat model"});
    v.push_back({"coframe", "cusp", "Example 1 coframe, theta3 and theta5 with -2 Omega/15"});
    v.push_back({"coframe", "cusp_printed", "Example 1 coframe with the printed -Omega/15 (not closed)"});
    v.push_back({"coframe", "example2", "Example 2 coframe, bidegree (1,3) curves"});
    v.push_back({"coframe", "example4_k3", "Example 4 coframe at k = 3"});
    v.push_back({"curve_family", "cuspidal_sextic", "(y + Q(x))^2 + P(x)^3 = 0, Q cubic, P quadratic (Example 1)"});
    return v;
  }();
  return items;
}

json catalog_json() {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "catalog";
  j["engine_version"] = kEngineVersion;
  json odes = json::array(), cfs = json::array(), fams = json::array();
  for (const auto& e : ode_catalog_entries()) odes.push_back({{"name", e.name}, {"citation", e.citation}, {"rhs", e.text}});
  for (const auto& it : catalog_items()) {
    if (it.kind == "coframe") cfs.push_back({{"name", it.name}, {"citation", it.citation}});
    if (it.kind == "curve_family") fams.push_back({{"name", it.name}, {"citation", it.citation}});
  }
  j["odes"] = odes;
  j["coframes"] = cfs;
  j["curve_families"] = fams;
  return j;
}

std::string catalog_text() {
  std::ostringstream o;
  std::string kind;
  for (const auto& it : catalog_items()) {
    if (it.kind != kind) {
      kind = it.kind;
      o << (kind == "ode" ? "ODEs" : kind == "coframe" ? "coframes" : "curve families") << ":\n";
    }
    o << "  " << std::left << std::setw(16) << it.name << it.citation << "\n";
  }
  return o.str();
}

}  // namespace g2::report
