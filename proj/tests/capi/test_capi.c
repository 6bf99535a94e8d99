/* Exercises the C interface from plain C. */

#include "ndsys/ndsys.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static int contains(const char* s, const char* part) { return s && strstr(s, part) != NULL; }

int main(void) {
  ndsys_system* sys = NULL;
  char* out = NULL;
  int code = -1;

  EXPECT(strlen(ndsys_version()) > 0);
  EXPECT(strcmp(ndsys_status_name(NDSYS_ERR_SCHEMA), "Schema") == 0);

  EXPECT(ndsys_system_from_fixture("triangular-3pt", &sys) == NDSYS_OK);
  EXPECT(ndsys_orbit_csv(sys, "1", 3, &out) == NDSYS_OK);
  EXPECT(out && strcmp(out, "n,point\n0,1\n1,2\n2,2\n3,3\n") == 0);
  ndsys_string_free(out);

  EXPECT(ndsys_check(sys, "minimal_m1", "{\"T\": 30, \"w\": \"1\"}", NULL, &out, &code) == NDSYS_OK);
  EXPECT(code == 0);
  EXPECT(contains(out, "\"HoldsEvidence\""));
  ndsys_string_free(out);
  EXPECT(ndsys_check(sys, "recurrent", NULL, NULL, &out, &code) == NDSYS_ERR_BAD_PARAMETER);
  EXPECT(strlen(ndsys_last_error()) > 0);
  ndsys_system_free(sys);

  EXPECT(ndsys_system_from_fixture("circle-alternating", &sys) == NDSYS_OK);
  EXPECT(ndsys_check(sys, "sensitive", "{\"T\": 100, \"w\": \"1/8\", \"delta\": \"1/10\"}", NULL, &out, &code) ==
         NDSYS_OK);
  EXPECT(code == 1);
  {
    char* reason = (char*)1;
    EXPECT(ndsys_replay(sys, out, &reason) == NDSYS_OK);
    EXPECT(reason == NULL);
  }
  ndsys_string_free(out);
  EXPECT(ndsys_eval(sys, 1, 2, "1/3", &out) == NDSYS_OK);
  EXPECT(out && strcmp(out, "1/3") == 0);
  ndsys_string_free(out);
  ndsys_system_free(sys);

  EXPECT(ndsys_system_from_fixture("k-transfer-counterexample", &sys) == NDSYS_OK);
  EXPECT(ndsys_hits(sys, "{0}", "{1}", NULL, 10, &out) == NDSYS_OK);
  EXPECT(contains(out, "\"members\":[3,7]"));
  ndsys_string_free(out);
  EXPECT(ndsys_compare(sys, "period", 0, "transitive", "{\"T\": 20, \"w\": \"1\"}", &out, &code) == NDSYS_OK);
  EXPECT(code != 1);
  ndsys_string_free(out);
  ndsys_system_free(sys);

  EXPECT(ndsys_classify("{\"T\": 10, \"members\": [2,4,6,8,10]}", "syndetic", NULL, &out) == NDSYS_OK);
  EXPECT(contains(out, "\"Holds\""));
  ndsys_string_free(out);
  EXPECT(ndsys_classify("{\"T\": 10}", "syndetic", NULL, &out) == NDSYS_ERR_SCHEMA);
  EXPECT(ndsys_classify("{\"T\": 10, \"members\": []}", "bogus", NULL, &out) == NDSYS_ERR_BAD_PARAMETER);

  EXPECT(ndsys_system_from_json("{\"schema_version\": 1}", &sys) == NDSYS_ERR_SCHEMA);
  EXPECT(contains(ndsys_last_error(), "at /"));
  EXPECT(ndsys_system_from_json("{not json", &sys) == NDSYS_ERR_PARSE);
  EXPECT(ndsys_system_from_fixture("nope", &sys) == NDSYS_ERR_UNKNOWN_FIXTURE);
  EXPECT(ndsys_system_from_file("/nonexistent/system.json", &sys) == NDSYS_ERR_IO);
  EXPECT(ndsys_system_from_fixture(NULL, &sys) == NDSYS_ERR_NULL_ARGUMENT);

  EXPECT(ndsys_example_run("minimal2-blocks", 1, &out, &code) == NDSYS_OK);
  EXPECT(code == 1);
  EXPECT(contains(out, "\"diff\": []"));
  ndsys_string_free(out);
  EXPECT(ndsys_example_list(&out) == NDSYS_OK);
  EXPECT(contains(out, "weak-but-not"));
  ndsys_string_free(out);
  EXPECT(ndsys_schema(&out) == NDSYS_OK);
  EXPECT(contains(out, "2020-12"));
  ndsys_string_free(out);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: ok\n");
  return 0;
}
