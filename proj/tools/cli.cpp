// g2ode: classify 7th order ODEs, run the verification suites, list catalogs.
//
// exit codes: 0 success (whatever the classification says), 1 engine error or
// a failing verification suite, 2 usage or parse error, 3 exact and sampled
// zero tests disagree.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "g2ode/g2ode.h"

namespace {

int exit_code(g2_status s) {
  switch (s) {
    case G2_OK: return 0;
    case G2_ERR_PARSE:
    case G2_ERR_UNKNOWN_SYMBOL:
    case G2_ERR_UNKNOWN_NAME:
    case G2_ERR_INVALID_ARGUMENT: return 2;
    case G2_ERR_ZERO_TEST_DISAGREEMENT: return 3;
    default: return 1;
  }
}

int report_error(g2_status s) {
  std::cerr << "g2ode: " << g2_status_name(s) << ": " << g2_last_error() << "\n";
  return exit_code(s);
}

// "-" writes to stdout
bool write_json(const std::string& path, const char* text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "g2ode: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GL(2) structures and G2 torsion types of 7th order ODEs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(g2_version()));

  g2_options opt = g2_default_options();
  std::string json_path;
  bool quiet = false;
  bool timing = false;

  auto* classify = app.add_subcommand("classify", "Wunschmann conditions and Fernandez-Gray type of y7 = F");
  std::string ode_text, ode_name;
  auto* o_ode = classify->add_option("--ode", ode_text, "right-hand side in x, y, y1..y6 (p, q, r, s, t, u)");
  auto* o_name = classify->add_option("--name", ode_name, "catalog ODE");
  o_ode->excludes(o_name);
  classify->add_option("--json", json_path, "write the JSON report to a file, - for stdout");
  classify->add_option("--digits", opt.digits, "digits of floating values in reports")->check(CLI::Range(1, 50));
  classify->add_option("--seed", opt.seed, "seed of every random choice");
  classify->add_option("--points", opt.points, "sample points of probabilistic zero tests")
      ->check(CLI::Range(64, 1 << 20));
  classify->add_flag("--timing", timing, "include timings (reports are then not byte-stable)");
  classify->add_flag("-q,--quiet", quiet, "no human-readable output");

  auto* papercheck = app.add_subcommand("papercheck", "run verification suites");
  std::string suite = "all";
  papercheck->add_option("--suite", suite, "suite name or all");
  papercheck->add_option("--json", json_path, "write the JSON summary to a file, - for stdout");
  papercheck->add_option("--seed", opt.seed, "seed of every random choice");
  papercheck->add_option("--points", opt.points, "sample points of probabilistic zero tests")
      ->check(CLI::Range(64, 1 << 20));
  papercheck->add_option("--threads", opt.threads, "suites run concurrently")->check(CLI::Range(1, 64));
  papercheck->add_flag("--timing", timing, "include timings in the JSON summary");
  papercheck->add_flag("-q,--quiet", quiet, "no human-readable output");
  bool list_suites = false;
  papercheck->add_flag("--list", list_suites, "list suite names");

  auto* catalog = app.add_subcommand("catalog", "ODEs, coframes and curve families");
  bool list = false;
  catalog->add_flag("--list", list, "list entries (default)");
  catalog->add_option("--json", json_path, "write the catalog as JSON, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opt.timing = timing;
  // JSON on stdout replaces the text output
  if (json_path == "-") quiet = true;

  if (*classify) {
    if (ode_text.empty() && ode_name.empty()) {
      std::cerr << "g2ode: classify needs --ode or --name\n";
      return 2;
    }
    g2_ode* ode = nullptr;
    g2_status s = ode_name.empty() ? g2_ode_parse(ode_text.c_str(), &ode) : g2_ode_catalog(ode_name.c_str(), &ode);
    if (s != G2_OK) return report_error(s);
    g2_report* rep = nullptr;
    s = g2_classify(ode, &opt, &rep);
    g2_ode_free(ode);
    if (s != G2_OK) return report_error(s);
    if (!quiet) std::cout << g2_report_text(rep);
    bool ok = json_path.empty() || write_json(json_path, g2_report_json(rep));
    g2_report_free(rep);
    return ok ? 0 : 1;
  }

  if (*papercheck) {
    if (list_suites) {
      for (size_t i = 0; g2_suite_name(i); ++i) std::cout << g2_suite_name(i) << "\n";
      return 0;
    }
    g2_check* chk = nullptr;
    g2_status s = g2_papercheck(suite.c_str(), &opt, &chk);
    if (s != G2_OK) {
      int code = report_error(s);
      if (s == G2_ERR_UNKNOWN_NAME) {
        std::cerr << "known suites: all";
        for (size_t i = 0; g2_suite_name(i); ++i) std::cerr << " " << g2_suite_name(i);
        std::cerr << "\n";
      }
      return code;
    }
    if (!quiet) std::cout << g2_check_text(chk);
    bool ok = json_path.empty() || write_json(json_path, g2_check_json(chk));
    bool all = g2_check_suites_passed(chk) == g2_check_suites(chk);
    g2_check_free(chk);
    return ok && all ? 0 : 1;
  }

  if (*catalog) {
    (void)list;
    if (json_path.empty()) {
      std::cout << g2_catalog_text();
      return 0;
    }
    return write_json(json_path, g2_catalog_json()) ? 0 : 1;
  }
  return 2;
}
