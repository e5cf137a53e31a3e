/* C interface of the gctuf solver library.
 *
 * All functionality is reachable through opaque handles and status codes:
 * parse an instance from its text format, run a command on it, and read the
 * result back as text (line-oriented "key: value" or JSON). Strings returned
 * through char** are owned by the caller and released with
 * gctuf_string_free().
 */
#ifndef GCTUF_H
#define GCTUF_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gctuf_status {
  GCTUF_OK = 0,
  GCTUF_ERR_PARSE = 1,       /* malformed instance text */
  GCTUF_ERR_INVALID = 2,     /* contract violation (dimensions, non-TU input, ...) */
  GCTUF_ERR_BUDGET = 3,      /* enumeration or search cap exceeded */
  GCTUF_ERR_UNSUPPORTED = 4, /* outside the guaranteed regime (e.g. depth > 3) */
  GCTUF_ERR_INTERNAL = 5     /* invariant broken; indicates a bug */
} gctuf_status;

typedef struct gctuf_instance gctuf_instance;
typedef struct gctuf_result gctuf_result;

typedef struct gctuf_options {
  int use_oracle;          /* route solves through the enumeration oracle */
  int paper_shape;         /* width-clamped pattern shapes (validated mode) */
  unsigned long long seed; /* root seed recorded in reports */
} gctuf_options;

void gctuf_options_init(gctuf_options* opts);

/* Parse any instance format (gctuf, ip, mcctu, gcc, gclf). On failure a
 * message is placed in *errmsg when errmsg is non-null. */
gctuf_status gctuf_parse(const char* text, gctuf_instance** out, char** errmsg);
gctuf_status gctuf_instance_text(const gctuf_instance* inst, char** out);
void gctuf_instance_free(gctuf_instance* inst);

/* Commands: "solve", "check-tu", "check-delta", "reduce", "decompose",
 * "pattern", "gclf", "gcc". Each expects the matching instance kind. */
gctuf_status gctuf_run(const char* command, const gctuf_instance* inst,
                       const gctuf_options* opts, gctuf_result** out, char** errmsg);

/* Seeded generators; kinds: "network", "transposed-network", "core",
 * "three-sum", "pivot" (gctuf instances), "strict-ip", "gclf", "gcc".
 * params is a comma-separated key=value list, e.g. "size=5,depth=2,order=4".
 */
gctuf_status gctuf_generate(const char* kind, unsigned long long seed, const char* params,
                            char** out_text, char** errmsg);

/* 0 = feasible, 1 = infeasible, 2 = not a feasibility verdict */
int gctuf_result_verdict(const gctuf_result* res);
gctuf_status gctuf_result_text(const gctuf_result* res, int json, char** out);
/* Named counters (e.g. "base_block_calls", "recursive_solves"); -1 if absent. */
long long gctuf_result_stat(const gctuf_result* res, const char* key);
double gctuf_result_call_bound(const gctuf_result* res);
void gctuf_result_free(gctuf_result* res);

void gctuf_string_free(char* s);
const char* gctuf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* GCTUF_H */
