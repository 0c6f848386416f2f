#ifndef TILTCORE_H
#define TILTCORE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; the values match the exit codes of the `tiltfilt` binary.
 */
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  /**
   * The command ran and some check failed.
   */
  TF_STATUS_FAILURES = 1,
  /**
   * The command ran and some verdict is unknown at the configured bounds.
   */
  TF_STATUS_UNKNOWN = 2,
  TF_STATUS_INPUT = 3,
  TF_STATUS_CAP_EXCEEDED = 4,
  TF_STATUS_VERIFY_FAILED = 5,
  TF_STATUS_INTERNAL = 6,
  TF_STATUS_NULL_ARGUMENT = 7,
} TfStatus;

/**
 * A parsed workspace. Opaque.
 */
typedef struct TfWorkspace TfWorkspace;

/**
 * Search bounds for [`tf_run`]; zero means the workspace default.
 */
typedef struct TfOptions {
  size_t enum_cap;
  size_t perp_bound;
  size_t res_cap;
  size_t sample_dim;
} TfOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses workspace text. On success `*out` owns a new workspace.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatus tf_workspace_parse(const char *source, struct TfWorkspace **out);

/**
 * Reads and parses a workspace file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TfStatus tf_workspace_open(const char *path, struct TfWorkspace **out);

/**
 * # Safety
 * `ws` must come from this library and not be used afterwards. Null is ignored.
 */
void tf_workspace_free(struct TfWorkspace *ws);

/**
 * Runs one command, given as its words separated by spaces
 * (`"filter-jms S2"`, `"check-lemma all"`). On any status below
 * `TF_STATUS_INPUT`, `*report_json` receives the JSON report and the status
 * reflects its outcome.
 *
 * # Safety
 * `ws` must be a live workspace, `command` a NUL-terminated string, `options`
 * null or valid, and `report_json` a valid pointer.
 */
enum TfStatus tf_run(const struct TfWorkspace *ws,
                     const char *command,
                     const struct TfOptions *options,
                     char **report_json);

/**
 * Re-checks a JSON report. Returns `TF_STATUS_OK` when every certificate
 * holds and `TF_STATUS_VERIFY_FAILED` otherwise; if `problems_json` is not
 * null it receives a JSON array of the problems found.
 *
 * # Safety
 * `report_json` must be a NUL-terminated string; `problems_json` null or valid.
 */
enum TfStatus tf_verify(const char *report_json, char **problems_json);

/**
 * Message for the last error on this thread, or null. Valid until the next
 * call into the library from the same thread.
 */
const char *tf_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void tf_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *tf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILTCORE_H */
