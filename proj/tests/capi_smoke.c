// Exercises the C interface as a client would: only g2ode.h, only the shared library.
#include <stdio.h>
#include <string.h>

#include "g2ode/g2ode.h"

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

int main(void) {
  EXPECT(strlen(g2_version()) > 0);
  EXPECT(g2_schema_version() == 1);
  g2_options opt = g2_default_options();

  g2_ode* ode = NULL;
  EXPECT(g2_ode_catalog("cusp", &ode) == G2_OK);
  g2_report* rep = NULL;
  EXPECT(g2_classify(ode, &opt, &rep) == G2_OK);
  EXPECT(strcmp(g2_report_type(rep), "W2+W4") == 0);
  EXPECT(g2_report_admits_geometry(rep) == 1);
  EXPECT(g2_report_wunschmann_vanishes(rep, 5) == 1);
  EXPECT(g2_report_wunschmann_vanishes(rep, 6) == -1);
  EXPECT(strstr(g2_report_json(rep), "\"schema_version\": 1") != NULL);
  EXPECT(strstr(g2_report_text(rep), "W2+W4") != NULL);
  g2_report_free(rep);
  g2_ode_free(ode);

  ode = NULL;
  EXPECT(g2_ode_parse("y", &ode) == G2_OK);
  EXPECT(strcmp(g2_ode_rhs(ode), "y") == 0);
  rep = NULL;
  EXPECT(g2_classify(ode, NULL, &rep) == G2_OK);
  EXPECT(g2_report_admits_geometry(rep) == 0);
  EXPECT(g2_report_wunschmann_vanishes(rep, 5) == 0);
  EXPECT(strcmp(g2_report_type(rep), "not applicable") == 0);
  g2_report_free(rep);
  g2_ode_free(ode);

  ode = (g2_ode*)1;
  EXPECT(g2_ode_parse("u*(", &ode) == G2_ERR_PARSE);
  EXPECT(ode == NULL);
  EXPECT(strstr(g2_last_error(), "position") != NULL);
  EXPECT(g2_ode_parse("y9", &ode) == G2_ERR_UNKNOWN_SYMBOL);
  EXPECT(g2_ode_catalog("nonesuch", &ode) == G2_ERR_UNKNOWN_NAME);
  EXPECT(g2_ode_parse(NULL, &ode) == G2_ERR_INVALID_ARGUMENT);
  EXPECT(g2_classify(NULL, NULL, &rep) == G2_ERR_INVALID_ARGUMENT);

  g2_options bad = opt;
  bad.points = 10;
  EXPECT(g2_ode_parse("0", &ode) == G2_OK);
  EXPECT(g2_classify(ode, &bad, &rep) == G2_ERR_INVALID_ARGUMENT);
  g2_ode_free(ode);

  g2_check* chk = NULL;
  EXPECT(g2_papercheck("none-such", &opt, &chk) == G2_ERR_UNKNOWN_NAME);
  EXPECT(chk == NULL);
  EXPECT(g2_papercheck("fg-types", &opt, &chk) == G2_OK);
  EXPECT(g2_check_suites(chk) == 1);
  EXPECT(g2_check_suites_passed(chk) == 1);
  EXPECT(strstr(g2_check_text(chk), "3/3 PASS") != NULL);
  EXPECT(strstr(g2_check_json(chk), "\"kind\": \"papercheck\"") != NULL);
  g2_check_free(chk);

  size_t n = 0;
  while (g2_suite_name(n)) ++n;
  EXPECT(n == 13);
  EXPECT(strstr(g2_catalog_text(), "cuspidal_sextic") != NULL);
  EXPECT(strstr(g2_catalog_json(), "example4_k3") != NULL);
  EXPECT(strcmp(g2_status_name(G2_ERR_ZERO_TEST_DISAGREEMENT), "zero test disagreement") == 0);

  g2_ode_free(NULL);
  g2_report_free(NULL);
  g2_check_free(NULL);

  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("capi ok\n");
  return 0;
}
