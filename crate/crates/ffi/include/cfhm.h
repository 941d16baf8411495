#ifndef CFHM_H
#define CFHM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes; the nonzero values 2 to 4 agree with the CLI exit codes.
 */
typedef enum CfhmStatus {
  CFHM_STATUS_OK = 0,
  CFHM_STATUS_NULL_ARGUMENT = 1,
  CFHM_STATUS_INVALID_INPUT = 2,
  CFHM_STATUS_CAP_EXCEEDED = 3,
  CFHM_STATUS_EMPTY_SAFE_SET = 4,
  CFHM_STATUS_VERIFICATION_FAILED = 5,
  CFHM_STATUS_INTERNAL = 6,
} CfhmStatus;

/**
 * A built or loaded instance.
 */
typedef struct CfhmInstance CfhmInstance;

/**
 * The result of one pipeline run.
 */
typedef struct CfhmRun CfhmRun;

/**
 * Sizes of an instance.
 */
typedef struct CfhmCounts {
  size_t p_vertices;
  size_t h1_edges;
  size_t h2_edges;
  size_t c_conflicts;
  size_t d_conflicts;
} CfhmCounts;

/**
 * Pipeline settings; `cfhm_run_options_default` fills them in.
 */
typedef struct CfhmRunOptions {
  /**
   * Degree bound; zero or negative means the instance's declared one.
   */
  double d;
  double eps;
  uint64_t seed;
  size_t max_rounds;
  bool stage1_only;
} CfhmRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cfhm_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *cfhm_last_error(void);

/**
 * Builds an instance from JSON parameters, e.g.
 * `{"name":"ramsey-cycles","n":8,"k":2,"cycle_len":4,"delta":0.25}`.
 * A Steiner `kappa` of `[]` means every `s`-subset.
 *
 * # Safety
 * `params_json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum CfhmStatus cfhm_instance_build(const char *params_json, struct CfhmInstance **out);

/**
 * Loads the instance stored under `prefix` (`.hg` or `.json`, `.cf`, `.meta.json`).
 *
 * # Safety
 * `prefix` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum CfhmStatus cfhm_instance_load(const char *prefix, struct CfhmInstance **out);

/**
 * Writes the instance files under `prefix`.
 *
 * # Safety
 * `inst` must come from this library; `prefix` must be NUL-terminated.
 */
enum CfhmStatus cfhm_instance_save(const struct CfhmInstance *inst, const char *prefix, bool json);

/**
 * # Safety
 * `inst` must come from this library; `out` must be a valid pointer.
 */
enum CfhmStatus cfhm_instance_counts(const struct CfhmInstance *inst, struct CfhmCounts *out);

/**
 * # Safety
 * `inst` must come from this library and not be used afterwards; null is ignored.
 */
void cfhm_instance_free(struct CfhmInstance *inst);

struct CfhmRunOptions cfhm_run_options_default(void);

/**
 * Runs both stages. On `Ok` and on `CapExceeded` a run handle is stored in
 * `out`; after a cap the matching is the last resampled state.
 *
 * # Safety
 * `inst` and `opts` must be valid; `out` must be a valid pointer.
 */
enum CfhmStatus cfhm_match(const struct CfhmInstance *inst,
                           const struct CfhmRunOptions *opts,
                           struct CfhmRun **out);

/**
 * Borrows the stage-1 (`stage` 1) or stage-2 (`stage` 2) edge ids of a run.
 * The array lives as long as the run.
 *
 * # Safety
 * `run` must come from this library; `edges` and `len` must be valid pointers.
 */
enum CfhmStatus cfhm_run_edges(const struct CfhmRun *run,
                               uint32_t stage,
                               const uint32_t **edges,
                               size_t *len);

/**
 * The run report as JSON; release with `cfhm_string_free`.
 *
 * # Safety
 * `run` must come from this library.
 */
char *cfhm_run_report_json(const struct CfhmRun *run);

/**
 * The matching in the interchange text format; release with `cfhm_string_free`.
 *
 * # Safety
 * `run` must come from this library.
 */
char *cfhm_run_matching_text(const struct CfhmRun *run);

/**
 * Verifies a run against its instance, including the decoded colouring or
 * covering. Returns `VerificationFailed` when a check fails; the report JSON
 * is stored in `report_json` when that pointer is non-null.
 *
 * # Safety
 * `inst` and `run` must come from this library.
 */
enum CfhmStatus cfhm_verify(const struct CfhmInstance *inst,
                            const struct CfhmRun *run,
                            char **report_json);

/**
 * # Safety
 * `run` must come from this library and not be used afterwards; null is ignored.
 */
void cfhm_run_free(struct CfhmRun *run);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void cfhm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CFHM_H */
