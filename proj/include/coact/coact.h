/* coact — public C interface to the co-creation engine.
 *
 * Conventions:
 *   - Every function returns a coact_status; COACT_OK means success.
 *   - On failure, coact_last_error() returns a one-line diagnostic for the
 *     calling thread, valid until the thread's next coact call.
 *   - Output strings (char**) are heap-allocated, NUL-terminated UTF-8 and
 *     must be released with coact_string_free(). They are only written on
 *     success unless documented otherwise.
 *   - Structured inputs and outputs are JSON text; configs are TOML files.
 */
#ifndef COACT_COACT_H
#define COACT_COACT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coact_status {
  COACT_OK = 0,
  COACT_ERR_CONFIG = 2,   /* unreadable/invalid configuration or reference data */
  COACT_ERR_RUNTIME = 3,  /* engine failure while executing the request */
  COACT_ERR_NO_INPUT = 4, /* no input logs/corpus to operate on */
  COACT_ERR_VERIFY = 5,   /* verification found a divergence */
  COACT_ERR_INVALID_ARG = 6
} coact_status;

/* Library version, static storage. */
const char* coact_version(void);

/* Last error message of the calling thread ("" when none). Static per-thread
 * storage: do not free. */
const char* coact_last_error(void);

/* Frees any string returned through a char** out-parameter. NULL is a no-op. */
void coact_string_free(char* s);

/* ---- canvas documents --------------------------------------------------- */

typedef struct coact_doc coact_doc;

/* Fresh document with the given lineage id (NULL/"" for a default). */
coact_status coact_doc_new(const char* lineage, coact_doc** out);
void coact_doc_free(coact_doc* doc);

/* Applies one tool call given as JSON {"tool","params","actor","tick"}.
 * Returns COACT_OK even when the call is rejected by the engine: the
 * verdict is in *result_json ({"ok":false,"error":...}). Only transport
 * problems (bad JSON, null doc) produce a non-OK status. */
coact_status coact_doc_apply(coact_doc* doc, const char* call_json, char** result_json);

/* Canonical snapshot of the current tree as JSON. */
coact_status coact_doc_snapshot(const coact_doc* doc, char** snapshot_json);

/* Checks structural invariants; COACT_ERR_VERIFY with a message on breakage. */
coact_status coact_doc_validate(const coact_doc* doc);

/* ---- simulation ---------------------------------------------------------- */

/* Runs the configured batch of sessions and writes one JSONL log per session
 * into out_dir (created if missing). overrides_json may be NULL or a JSON
 * object {"seed":u64,"sessions":n} taking precedence over the config file.
 * *summary_json receives {"sessions","turns","files",...}. */
coact_status coact_simulate(const char* config_path, const char* overrides_json,
                            const char* out_dir, char** summary_json);

/* ---- analysis ------------------------------------------------------------ */

/* Annotates and aggregates the given logs (paths_json: JSON array of file
 * paths). reference_path: path to reference-statistics JSON, "" or NULL for
 * none, "builtin" for the compiled-in table. When a reference is given the
 * report gains "reference" and "compare" sections computed at tolerance_pp.
 * *report_json receives {"turns","distribution","agreement",...}. When a
 * reference is given and any statistic misses tolerance, the report is still
 * written and the call returns COACT_ERR_VERIFY. */
coact_status coact_analyze(const char* paths_json, const char* reference_path,
                           double tolerance_pp, char** report_json);

/* Renders an analyze report. mode: "table" (fixed-width text) or "svg"
 * (bar chart). */
coact_status coact_render(const char* report_json, const char* mode, char** out);

/* ---- calibration --------------------------------------------------------- */

/* Stochastic search for a policy matching the reference statistics, starting
 * from the policy in config_path. budget = number of candidate evaluations;
 * each evaluation simulates `sessions_per_eval` sessions (<=0 for the
 * config's session count). overrides_json may be NULL or {"seed":u64}.
 * *result_json receives {"policy","policy_toml","score","evaluations",
 * "distribution"}. */
coact_status coact_calibrate(const char* config_path, const char* reference_path,
                             const char* overrides_json, int budget, int sessions_per_eval,
                             char** result_json);

/* ---- replay -------------------------------------------------------------- */

/* Reapplies every canvas operation of a session log onto a fresh document.
 * verify=0: *result_json receives {"snapshot":...}. verify!=0: additionally
 * byte-compares against the logged final canvas; on divergence returns
 * COACT_ERR_VERIFY and still writes {"match":false,"reason":...}. */
coact_status coact_replay(const char* log_path, int verify, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* COACT_COACT_H */
