#ifndef RPIC_H
#define RPIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum RpicStatus {
  RPIC_STATUS_OK = 0,
  RPIC_STATUS_NULL_POINTER = 1,
  RPIC_STATUS_INVALID_UTF8 = 2,
  RPIC_STATUS_PARSE = 3,
  RPIC_STATUS_VALIDATION = 4,
  RPIC_STATUS_VERIFICATION = 5,
  RPIC_STATUS_NOT_APPLICABLE = 6,
  RPIC_STATUS_PANIC = 7,
} RpicStatus;

/**
 * Opaque result of one job.
 */
typedef struct RpicReport RpicReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Runs a job.
 *
 * `command` may be null, in which case the spec must name one. On success
 * `*out` receives a report to be released with [`rpic_report_free`].
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string, `command` null or
 * NUL-terminated, and `out` a valid pointer.
 */
enum RpicStatus rpic_run(const char *spec_json,
                         const char *command,
                         bool verify,
                         struct RpicReport **out);

/**
 * # Safety
 * `report` must be null or a pointer obtained from [`rpic_run`], freed once.
 */
void rpic_report_free(struct RpicReport *report);

/**
 * The report as JSON (schema version 1). Null on error.
 *
 * # Safety
 * `report` must be a live report handle.
 */
char *rpic_report_to_json(const struct RpicReport *report);

/**
 * The report as human-readable text. Null on error.
 *
 * # Safety
 * `report` must be a live report handle.
 */
char *rpic_report_to_text(const struct RpicReport *report);

/**
 * Free rank of a `picard` or `weight-image` report.
 *
 * # Safety
 * `report` must be a live report handle and `out` a valid pointer.
 */
enum RpicStatus rpic_report_free_rank(const struct RpicReport *report, size_t *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void rpic_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *rpic_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *rpic_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RPIC_H */
