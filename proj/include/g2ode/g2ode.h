/* C interface to the g2ode engine: classification of 7th order ODEs, the
   verification suites and the catalogs.

   Objects are opaque handles released with their *_free function. Every call
   returns a g2_status; on failure g2_last_error() describes the error of the
   most recent failing call on the calling thread. Strings returned by an
   object stay valid until that object is freed. */
#ifndef G2ODE_G2ODE_H
#define G2ODE_G2ODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define G2_API __declspec(dllexport)
#else
#define G2_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum g2_status {
  G2_OK = 0,
  G2_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad option value */
  G2_ERR_PARSE = 2,            /* malformed expression text */
  G2_ERR_UNKNOWN_SYMBOL = 3,
  G2_ERR_UNKNOWN_NAME = 4,     /* catalog entry or suite */
  G2_ERR_DOMAIN = 5,
  G2_ERR_POLE = 6,
  G2_ERR_BRANCH = 7,
  G2_ERR_INCONCLUSIVE = 8,
  G2_ERR_ZERO_TEST_DISAGREEMENT = 9,
  G2_ERR_INTERNAL = 10
} g2_status;

typedef struct g2_options {
  uint64_t seed;   /* governs every random choice */
  int32_t points;  /* sample points of probabilistic zero tests, >= 64 */
  int32_t digits;  /* digits of floating output, 1..50 */
  int32_t threads; /* concurrent suites in g2_papercheck */
  int32_t timing;  /* nonzero: include wall-clock times in reports */
} g2_options;

typedef struct g2_ode g2_ode;
typedef struct g2_report g2_report;
typedef struct g2_check g2_check;

G2_API const char* g2_version(void);
G2_API int g2_schema_version(void);
G2_API const char* g2_status_name(g2_status s);
G2_API const char* g2_last_error(void);
G2_API g2_options g2_default_options(void);

/* y7 = rhs in x, y, y1..y6 (aliases p, q, r, s, t, u) */
G2_API g2_status g2_ode_parse(const char* rhs, g2_ode** out);
G2_API g2_status g2_ode_catalog(const char* name, g2_ode** out);
G2_API const char* g2_ode_name(const g2_ode* ode);
G2_API const char* g2_ode_rhs(const g2_ode* ode);
G2_API void g2_ode_free(g2_ode* ode);

/* opts may be NULL for the defaults */
G2_API g2_status g2_classify(const g2_ode* ode, const g2_options* opts, g2_report** out);
G2_API int g2_report_admits_geometry(const g2_report* r);
/* 1 when W_i vanishes, i = 1..5; -1 on a bad index */
G2_API int g2_report_wunschmann_vanishes(const g2_report* r, int i);
/* "torsion-free", "W2+W4", "not applicable", ... */
G2_API const char* g2_report_type(const g2_report* r);
G2_API const char* g2_report_json(const g2_report* r);
G2_API const char* g2_report_text(const g2_report* r);
G2_API void g2_report_free(g2_report* r);

/* suite is a suite name or "all" */
G2_API g2_status g2_papercheck(const char* suite, const g2_options* opts, g2_check** out);
G2_API size_t g2_check_suites(const g2_check* c);
G2_API size_t g2_check_suites_passed(const g2_check* c);
G2_API const char* g2_check_json(const g2_check* c);
G2_API const char* g2_check_text(const g2_check* c);
G2_API void g2_check_free(g2_check* c);

/* names of the verification suites, index 0.. ; NULL past the end */
G2_API const char* g2_suite_name(size_t i);

/* static strings */
G2_API const char* g2_catalog_json(void);
G2_API const char* g2_catalog_text(void);

#ifdef __cplusplus
}
#endif

#endif
