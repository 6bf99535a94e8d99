#ifndef NDSYS_H
#define NDSYS_H

/* C interface to the ndsys library.
 *
 * Every call returns an ndsys_status. Results come back as NUL-terminated
 * strings (usually JSON) that the caller releases with ndsys_string_free.
 * On a nonzero status, ndsys_last_error() describes the failure for the
 * calling thread. Rationals are passed as strings "p/q"; points and regions
 * use the same text forms the reports use. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NDSYS_API __declspec(dllexport)
#else
#define NDSYS_API __attribute__((visibility("default")))
#endif

typedef enum ndsys_status {
  NDSYS_OK = 0,
  NDSYS_ERR_SPACE_MISMATCH = 1,
  NDSYS_ERR_NOT_INVERTIBLE = 2,
  NDSYS_ERR_HETEROGENEOUS_WINDOW = 3,
  NDSYS_ERR_EMPTY_HORIZON = 4,
  NDSYS_ERR_BAD_PARAMETER = 5,
  NDSYS_ERR_UNSUPPORTED = 6,
  NDSYS_ERR_UNKNOWN_FIXTURE = 7,
  NDSYS_ERR_NOT_PERIODIC = 8,
  NDSYS_ERR_PARSE = 9,
  NDSYS_ERR_SCHEMA = 10,
  NDSYS_ERR_PRECISION = 11,
  NDSYS_ERR_IO = 12,
  NDSYS_ERR_NULL_ARGUMENT = 13,
  NDSYS_ERR_INTERNAL = 14
} ndsys_status;

typedef struct ndsys_system ndsys_system;

NDSYS_API const char* ndsys_version(void);
NDSYS_API const char* ndsys_status_name(ndsys_status status);
/* Message of the last failed call on this thread; "" if none. */
NDSYS_API const char* ndsys_last_error(void);
NDSYS_API void ndsys_string_free(char* s);

/* Systems. `source` for ndsys_system_open is a fixture name or a path. */
NDSYS_API ndsys_status ndsys_system_from_json(const char* document, ndsys_system** out);
NDSYS_API ndsys_status ndsys_system_from_file(const char* path, ndsys_system** out);
NDSYS_API ndsys_status ndsys_system_from_fixture(const char* name, ndsys_system** out);
NDSYS_API ndsys_status ndsys_system_open(const char* source, ndsys_system** out);
NDSYS_API void ndsys_system_free(ndsys_system* sys);
/* Canonical system document. */
NDSYS_API ndsys_status ndsys_system_json(const ndsys_system* sys, char** out);
NDSYS_API ndsys_status ndsys_system_digest(const ndsys_system* sys, char** out);

/* f_from^n(point) as point text. */
NDSYS_API ndsys_status ndsys_eval(const ndsys_system* sys, uint64_t from, uint64_t n, const char* point, char** out);
/* CSV "n,point" for n = 0..horizon. */
NDSYS_API ndsys_status ndsys_orbit_csv(const ndsys_system* sys, const char* point, uint64_t horizon, char** out);
/* N(U,V) when `v` is given, else N(U,delta). Returns sample JSON. */
NDSYS_API ndsys_status ndsys_hits(const ndsys_system* sys, const char* u, const char* v, const char* delta,
                                  uint64_t horizon, char** out);
/* Classifies a sample document. `set_class` is syndetic, thick, cofinite,
 * thickly_syndetic or upper_density; `options` is JSON {k, theta,
 * sub_horizon} or NULL. */
NDSYS_API ndsys_status ndsys_classify(const char* sample, const char* set_class, const char* options, char** out);

/* Runs a property check. `params` is a JSON object with any of T, w, delta,
 * epsilon, eta, theta, k, m, L, pair_budget, seed, workers, anchor,
 * grid_depth, sub_horizon, epsilons; NULL uses the system defaults. `point`
 * is required for point properties. Writes the report JSON and the verdict
 * (0 Holds, 1 Fails, 2 Inconclusive) when `verdict` is non-NULL. */
NDSYS_API ndsys_status ndsys_check(const ndsys_system* sys, const char* property, const char* params, const char* point,
                                   char** out, int* verdict);
NDSYS_API ndsys_status ndsys_property_names(char** out);
/* Re-verifies a FailsWitness report. Writes NULL to `reason` when the
 * witness holds up, else a string describing why not. */
NDSYS_API ndsys_status ndsys_replay(const ndsys_system* sys, const char* report, char** reason);
/* CSV "n,diam,diam_approx" for the image of `region`. */
NDSYS_API ndsys_status ndsys_diameter_curve(const ndsys_system* sys, const char* region, uint64_t horizon, char** out);
/* Cells of the cover at width w, as a JSON array of region texts. */
NDSYS_API ndsys_status ndsys_cover(const ndsys_system* sys, const char* width, char** out);

/* `mode` is "period" or "shift"; `index` is the shift start (ignored for
 * period). Writes the consistency (0 Consistent, 1 Violation,
 * 2 NotApplicable) when non-NULL. */
NDSYS_API ndsys_status ndsys_compare(const ndsys_system* sys, const char* mode, uint64_t index, const char* property,
                                     const char* params, char** out, int* consistency);

/* Fixtures. */
NDSYS_API ndsys_status ndsys_example_list(char** out);
NDSYS_API ndsys_status ndsys_example_run(const char* name, uint64_t workers, char** out, int* pass);
NDSYS_API ndsys_status ndsys_schema(char** out);

#ifdef __cplusplus
}
#endif

#endif
