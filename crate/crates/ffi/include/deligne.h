#ifndef DELIGNE_H
#define DELIGNE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  /*
   The verification ran and at least one check failed; the JSON report
   is still returned.
   */
  DL_STATUS_VERIFICATION_FAILED = 1,
  /*
   The input was rejected; see `dl_last_error_message`.
   */
  DL_STATUS_INPUT_ERROR = 2,
  DL_STATUS_NULL_POINTER = 3,
  DL_STATUS_UTF8 = 4,
  DL_STATUS_INTERNAL = 5,
} DlStatus;

/*
 A parsed task file.
 */
typedef struct DlTask DlTask;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses task text into a new handle stored in `*out`.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DlStatus dl_task_parse(const char *text, struct DlTask **out);

/*
 Releases a handle from `dl_task_parse`. Null is ignored.

 # Safety
 `task` must come from `dl_task_parse` and not be freed twice.
 */
void dl_task_free(struct DlTask *task);

/*
 Runs `subcommand` (`"norm"`, `"pair"`, `"intersect"`, `"metric"` or
 `"verify <suite>"`) on `task`, which may be null for `verify`. The JSON
 document is stored in `*out_json` on `Ok` and `VerificationFailed`.

 # Safety
 `task` must be null or a live handle, `subcommand` a NUL-terminated string
 and `out_json` a valid pointer.
 */
enum DlStatus dl_run(const struct DlTask *task, const char *subcommand, char **out_json);

/*
 Runs a seeded property suite. `count = 0` selects the suite default.

 # Safety
 `suite` must be a NUL-terminated string and `out_json` a valid pointer.
 */
enum DlStatus dl_verify_suite(const char *suite, uint64_t seed, size_t count, char **out_json);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void dl_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into the library on the same thread.
 */
const char *dl_last_error_message(void);

/*
 Library version as a static string.
 */
const char *dl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELIGNE_H */
