#include <cstdio>
#include <set>

#include "doctest.h"
#include "report.hpp"

using namespace g2;
using json = nlohmann::ordered_json;

TEST_SUITE("report") {

TEST_CASE("sha256") {
  CHECK(report::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(report::sha256_hex("").size() == 64);
}

TEST_CASE("classification report layout") {
  report::Settings s;
  auto c = classify(ode_catalog("cusp"));
  json j = report::classification_json(c, s);
  CHECK(j["schema_version"] == report::kSchemaVersion);
  CHECK(j["kind"] == "classification");
  CHECK(j["wunschmann"].size() == 5);
  for (const auto& w : j["wunschmann"]) {
    CHECK(w["vanishes"] == true);
    CHECK(w["zero_test"]["mode"] == "exact");
    CHECK(w["witness"]["sha256"].get<std::string>().size() == 64);
  }
  CHECK(j["fernandez_gray"]["type"] == "W2+W4");
  CHECK(j["fernandez_gray"]["classes"] == json::array({"W2", "W4"}));
  CHECK(j["fernandez_gray"]["witnesses"].size() == 5);
  CHECK_FALSE(j.contains("timing_seconds"));
  // every flag carries the hash of its witness text
  for (const auto& w : j["fernandez_gray"]["witnesses"]) {
    if (w["witness"]["text"].is_null()) {
      CHECK(w["witness"]["length"].get<size_t>() > report::kWitnessTextLimit);
    } else {
      CHECK(report::sha256_hex(w["witness"]["text"].get<std::string>()) == w["witness"]["sha256"]);
    }
  }
  s.timing = true;
  CHECK(report::classification_json(c, s).contains("timing_seconds"));
}

TEST_CASE("reports are byte-stable") {
  report::Settings s;
  auto a = report::classification_json(classify(ode_catalog("example4_k3")), s).dump(2);
  auto b = report::classification_json(classify(ode_catalog("example4_k3")), s).dump(2);
  CHECK(a == b);
  CHECK(a.find("exact+probabilistic") != std::string::npos);
}

TEST_CASE("long witnesses are hashed") {
  auto c = classify(make_ode("generic", "y6^3*y5/(y4 + x) + y*y3^2"));
  json j = report::classification_json(c, {});
  bool hashed_only = false;
  for (const auto& w : j["wunschmann"]) {
    size_t len = w["witness"]["length"];
    CHECK(w["witness"]["text"].is_null() == (len > report::kWitnessTextLimit));
    hashed_only = hashed_only || w["witness"]["text"].is_null();
  }
  CHECK(hashed_only);
  CHECK(j["fernandez_gray"]["applicable"] == false);
  CHECK(j["fernandez_gray"]["reason"].is_string());
}

TEST_CASE("digits rounds floating values") {
  report::Settings s;
  s.digits = 3;
  auto j = report::classification_json(classify(ode_catalog("example4_k3")), s);
  double v = j["wunschmann"][0]["zero_test"]["log2_failure_bound"];
  CHECK(v < -40);
  s.digits = 50;
  double full = report::classification_json(classify(ode_catalog("example4_k3")), s)["wunschmann"][0]["zero_test"]
                                                                                     ["log2_failure_bound"];
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", full);
  CHECK(v == std::stod(buf));
  CHECK(v != full);
}

TEST_CASE("text rendering") {
  auto t = report::classification_text(classify(make_ode("lin", "y")), {});
  CHECK(t.find("W5: nonzero") != std::string::npos);
  CHECK(t.find("not applicable") != std::string::npos);
}

TEST_CASE("catalog") {
  std::set<std::string> odes, cfs, fams;
  for (const auto& it : report::catalog_items()) {
    CHECK_FALSE(it.citation.empty());
    (it.kind == "ode" ? odes : it.kind == "coframe" ? cfs : fams).insert(it.name);
  }
  for (const char* n : {"cusp", "submax", "trivial", "example2", "example4_k3"}) CHECK(odes.count(n));
  for (const char* n : {"flat", "cusp", "example2", "example4_k3"}) CHECK(cfs.count(n));
  CHECK(fams.count("cuspidal_sextic"));
  for (const auto& n : odes) CHECK_NOTHROW(ode_catalog(n));
  auto j = report::catalog_json();
  CHECK(j["odes"].size() == odes.size());
}

TEST_CASE("suite registry") {
  CHECK(check::suites().size() == 13);
  CHECK(check::is_suite("fg-types"));
  CHECK_FALSE(check::is_suite("none-such"));
  CHECK_THROWS_AS(check::run_suite("none-such"), DomainError);
  CHECK_THROWS_AS(check::run_suites("none-such"), DomainError);
  auto r = check::run_suite("fg-types");
  CHECK(r.pass());
  CHECK(r.passed() == 3);
  check::SuiteResult empty;
  CHECK_FALSE(empty.pass());
  check::SuiteResult slow = r;
  slow.limit_seconds = 1;
  slow.seconds = 2;
  CHECK_FALSE(slow.pass());
}

TEST_CASE("suites give the same results in parallel") {
  check::Options one, four;
  four.threads = 4;
  report::Settings s;
  auto a = report::papercheck_json(check::run_suites("all", one), s, 1);
  auto b = report::papercheck_json(check::run_suites("all", four), s, 1);
  CHECK(a.dump() == b.dump());
  CHECK(a["passed"] == 13);
  CHECK(report::papercheck_text(check::run_suites("rep-theory"), s).find("rep-theory: 4/4 PASS") !=
        std::string::npos);
}

}
