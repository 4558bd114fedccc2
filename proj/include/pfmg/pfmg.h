#ifndef PFMG_H
#define PFMG_H

/* C interface of the price-formation toolkit.  All functionality is reached
 * through an opaque config handle plus pipeline names; artifacts are written
 * to an output directory.  Functions return 0 on success or one of the error
 * codes below; pfmg_last_error() describes the most recent failure in the
 * calling thread. */

#ifdef __cplusplus
extern "C" {
#endif

enum {
  PFMG_OK = 0,
  PFMG_ERR_CONFIG = 2,
  PFMG_ERR_NON_CONVERGENCE = 3,
  PFMG_ERR_INFEASIBLE = 4,
  PFMG_ERR_NUMERICAL = 5,
  PFMG_ERR_INVALID_ARGUMENT = 6,
  PFMG_ERR_IO = 7,
  PFMG_ERR_INTERNAL = 8
};

typedef struct pfmg_config pfmg_config;

/* Parse and resolve a JSON run description.  Returns NULL on failure (see
 * pfmg_last_error()).  Free with pfmg_config_free. */
pfmg_config* pfmg_config_load_file(const char* path);
pfmg_config* pfmg_config_load_string(const char* text);
void pfmg_config_free(pfmg_config* cfg);

/* Override the corresponding config fields (recorded in the manifest). */
int pfmg_config_set_seed(pfmg_config* cfg, unsigned long seed);
int pfmg_config_set_threads(pfmg_config* cfg, int threads);

/* Run one pipeline: "validate", "solve", "lp", "duality", "commutation" or
 * "sweep".  Artifacts are written under out_dir (created if missing); on
 * failure an error.json is left there as well. */
int pfmg_run(pfmg_config* cfg, const char* pipeline, const char* out_dir);

/* Message for the most recent failure in this thread; empty string if the
 * last call succeeded. */
const char* pfmg_last_error(void);

/* Error code of the most recent failure in this thread; PFMG_OK if the last
 * call succeeded.  Useful for the pointer-returning constructors. */
int pfmg_last_error_code(void);

/* Stable name for an error code ("config_error", "infeasible", ...). */
const char* pfmg_error_name(int code);

/* Built-in problem catalogue; plain text (one "name: description" per line)
 * or a JSON array when as_json is nonzero.  *out is malloc'd; release it
 * with pfmg_string_free. */
int pfmg_list_builtins(int as_json, char** out);
void pfmg_string_free(char* s);

const char* pfmg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* PFMG_H */
