#ifndef TOTALK_H
#define TOTALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the command-line exit codes.
 */
typedef enum TotalkStatus {
  /**
   * Every check passed.
   */
  TotalkStatus_Ok = 0,
  /**
   * The run finished but a verification failed (see the report).
   */
  TotalkStatus_VerificationFailed = 1,
  /**
   * Malformed input (unparseable case name, document, or matrix).
   */
  TotalkStatus_InvalidInput = 2,
  /**
   * A null pointer or non-UTF-8 string was passed.
   */
  TotalkStatus_InvalidArgument = 3,
} TotalkStatus;

/**
 * Opaque report set.
 */
typedef struct TotalkReports TotalkReports;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Run the built-in verification suite.
 *
 * `case` is one of `de`, `family`, `gamma`, `refute`, `beta-auto`, `cones`,
 * `all`; `max_coeff` and `window` of 0 select the defaults. On success
 * (`Ok` or `VerificationFailed`), `out` receives a report handle.
 *
 * # Safety
 * `case` must be NUL-terminated or null (null selects `all`); `out` must be
 * a valid pointer.
 */
enum TotalkStatus totalk_verify_run(const char *case_,
                                    uint32_t max_coeff,
                                    uint32_t window,
                                    struct TotalkReports **out);

/**
 * Parse a JSON input document and run its assertions.
 *
 * # Safety
 * `document` must be NUL-terminated; `out` must be a valid pointer.
 */
enum TotalkStatus totalk_check_document(const char *document, struct TotalkReports **out);

/**
 * Did every report in the set pass?
 *
 * # Safety
 * `reports` must be a live handle from this library (or null, which counts
 * as failed).
 */
bool totalk_reports_passed(const struct TotalkReports *reports);

/**
 * Number of reports in the set.
 *
 * # Safety
 * `reports` must be a live handle from this library or null.
 */
uintptr_t totalk_reports_len(const struct TotalkReports *reports);

/**
 * The byte-deterministic JSON rendering of the report set.
 *
 * # Safety
 * `reports` must be a live handle. Release the string with
 * [`totalk_string_free`].
 */
char *totalk_reports_to_json(const struct TotalkReports *reports);

/**
 * The line-oriented text rendering of the report set.
 *
 * # Safety
 * `reports` must be a live handle. Release the string with
 * [`totalk_string_free`].
 */
char *totalk_reports_to_text(const struct TotalkReports *reports);

/**
 * Release a report set.
 *
 * # Safety
 * `reports` must be a handle from this library, not yet freed; null is a
 * no-op.
 */
void totalk_reports_free(struct TotalkReports *reports);

/**
 * Smith normal form of a JSON matrix (an array of rows, or an object with
 * an `entries` field); returns the JSON result described in the library
 * documentation, or null on malformed input.
 *
 * # Safety
 * `matrix_json` must be NUL-terminated. Release the result with
 * [`totalk_string_free`].
 */
char *totalk_snf_json(const char *matrix_json);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a `totalk_*` function and not yet freed;
 * null is a no-op.
 */
void totalk_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TOTALK_H */
