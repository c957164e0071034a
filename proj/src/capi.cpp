#include "g2ode/g2ode.h"

#include <memory>
#include <string>

#include "errors.hpp"
#include "odeclass.hpp"
#include "papercheck.hpp"
#include "report.hpp"

struct g2_ode {
  g2::OdeDefinition ode;
  std::string rhs;
};

struct g2_report {
  g2::ClassificationReport r;
  std::string type, json, text;
};

struct g2_check {
  std::vector<g2::check::SuiteResult> results;
  std::string json, text;
};

namespace {

thread_local std::string last_error;

g2_status fail(g2_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
g2_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const g2::ParseError& e) {
    return fail(G2_ERR_PARSE, e.what());
  } catch (const g2::UnknownSymbol& e) {
    return fail(G2_ERR_UNKNOWN_SYMBOL, e.what());
  } catch (const g2::PoleError& e) {
    return fail(G2_ERR_POLE, e.what());
  } catch (const g2::BranchError& e) {
    return fail(G2_ERR_BRANCH, e.what());
  } catch (const g2::Inconclusive& e) {
    return fail(G2_ERR_INCONCLUSIVE, e.what());
  } catch (const g2::ZeroTestDisagreement& e) {
    return fail(G2_ERR_ZERO_TEST_DISAGREEMENT, e.what());
  } catch (const g2::DomainError& e) {
    return fail(G2_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(G2_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(G2_ERR_INTERNAL, "unknown exception");
  }
}

bool read_options(const g2_options* o, g2_options& out) {
  out = o ? *o : g2_default_options();
  if (out.points < 64) return false;
  if (out.digits < 1 || out.digits > 50) return false;
  if (out.threads < 1) return false;
  return true;
}

g2::report::Settings settings_of(const g2_options& o) {
  g2::report::Settings s;
  s.seed = o.seed;
  s.points = o.points;
  s.digits = o.digits;
  s.timing = o.timing != 0;
  return s;
}

}  // namespace

extern "C" {

const char* g2_version(void) { return g2::report::kEngineVersion; }

int g2_schema_version(void) { return g2::report::kSchemaVersion; }

const char* g2_status_name(g2_status s) {
  switch (s) {
    case G2_OK: return "ok";
    case G2_ERR_INVALID_ARGUMENT: return "invalid argument";
    case G2_ERR_PARSE: return "parse error";
    case G2_ERR_UNKNOWN_SYMBOL: return "unknown symbol";
    case G2_ERR_UNKNOWN_NAME: return "unknown name";
    case G2_ERR_DOMAIN: return "domain error";
    case G2_ERR_POLE: return "pole";
    case G2_ERR_BRANCH: return "branch point";
    case G2_ERR_INCONCLUSIVE: return "inconclusive";
    case G2_ERR_ZERO_TEST_DISAGREEMENT: return "zero test disagreement";
    case G2_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* g2_last_error(void) { return last_error.c_str(); }

g2_options g2_default_options(void) {
  g2_options o;
  o.seed = 0x5eed;
  o.points = 64;
  o.digits = 50;
  o.threads = 1;
  o.timing = 0;
  return o;
}

g2_status g2_ode_parse(const char* rhs, g2_ode** out) {
  if (!rhs || !out) return fail(G2_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto ode = g2::make_ode("input", rhs, 7);
    *out = new g2_ode{ode, ode.rhs.str()};
    return G2_OK;
  });
}

g2_status g2_ode_catalog(const char* name, g2_ode** out) {
  if (!name || !out) return fail(G2_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    g2::OdeDefinition ode;
    try {
      ode = g2::ode_catalog(name);
    } catch (const g2::DomainError& e) {
      return fail(G2_ERR_UNKNOWN_NAME, e.what());
    }
    *out = new g2_ode{ode, ode.rhs.str()};
    return G2_OK;
  });
}

const char* g2_ode_name(const g2_ode* ode) { return ode ? ode->ode.name.c_str() : nullptr; }

const char* g2_ode_rhs(const g2_ode* ode) { return ode ? ode->rhs.c_str() : nullptr; }

void g2_ode_free(g2_ode* ode) { delete ode; }

g2_status g2_classify(const g2_ode* ode, const g2_options* opts, g2_report** out) {
  if (!ode || !out) return fail(G2_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  g2_options o;
  if (!read_options(opts, o)) return fail(G2_ERR_INVALID_ARGUMENT, "points must be >= 64, digits in 1..50, threads >= 1");
  return guarded([&] {
    g2::ZeroOptions z;
    z.points = o.points;
    z.seed = o.seed;
    auto r = std::make_unique<g2_report>();
    r->r = g2::classify(ode->ode, z);
    r->r.rhs = ode->rhs;
    auto s = settings_of(o);
    r->type = r->r.fg.label();
    r->json = g2::report::classification_json(r->r, s).dump(2) + "\n";
    r->text = g2::report::classification_text(r->r, s);
    *out = r.release();
    return G2_OK;
  });
}

int g2_report_admits_geometry(const g2_report* r) { return r ? r->r.admits_geometry() : -1; }

int g2_report_wunschmann_vanishes(const g2_report* r, int i) {
  if (!r || i < 1 || i > 5) return -1;
  return r->r.wunschmann.vanishes(i - 1);
}

const char* g2_report_type(const g2_report* r) { return r ? r->type.c_str() : nullptr; }

const char* g2_report_json(const g2_report* r) { return r ? r->json.c_str() : nullptr; }

const char* g2_report_text(const g2_report* r) { return r ? r->text.c_str() : nullptr; }

void g2_report_free(g2_report* r) { delete r; }

g2_status g2_papercheck(const char* suite, const g2_options* opts, g2_check** out) {
  if (!suite || !out) return fail(G2_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  g2_options o;
  if (!read_options(opts, o)) return fail(G2_ERR_INVALID_ARGUMENT, "points must be >= 64, digits in 1..50, threads >= 1");
  std::string name(suite);
  if (name != "all" && !g2::check::is_suite(name)) return fail(G2_ERR_UNKNOWN_NAME, "unknown suite '" + name + "'");
  return guarded([&] {
    g2::check::Options co;
    co.seed = o.seed;
    co.points = o.points;
    co.threads = o.threads;
    auto c = std::make_unique<g2_check>();
    c->results = g2::check::run_suites(name, co);
    auto s = settings_of(o);
    c->json = g2::report::papercheck_json(c->results, s, o.threads).dump(2) + "\n";
    c->text = g2::report::papercheck_text(c->results, s);
    *out = c.release();
    return G2_OK;
  });
}

size_t g2_check_suites(const g2_check* c) { return c ? c->results.size() : 0; }

size_t g2_check_suites_passed(const g2_check* c) {
  size_t n = 0;
  if (c)
    for (const auto& r : c->results) n += r.pass();
  return n;
}

const char* g2_check_json(const g2_check* c) { return c ? c->json.c_str() : nullptr; }

const char* g2_check_text(const g2_check* c) { return c ? c->text.c_str() : nullptr; }

void g2_check_free(g2_check* c) { delete c; }

const char* g2_suite_name(size_t i) {
  const auto& s = g2::check::suites();
  return i < s.size() ? s[i].name.c_str() : nullptr;
}

const char* g2_catalog_json(void) {
  static const std::string s = g2::report::catalog_json().dump(2) + "\n";
  return s.c_str();
}

const char* g2_catalog_text(void) {
  static const std::string s = g2::report::catalog_text();
  return s.c_str();
}

}  // extern "C"
