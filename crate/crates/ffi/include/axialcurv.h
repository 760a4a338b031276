#ifndef AXIALCURV_H
#define AXIALCURV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AxcStatus {
  AXC_STATUS_OK = 0,
  AXC_STATUS_NULL_POINTER = 1,
  AXC_STATUS_INVALID_UTF8 = 2,
  AXC_STATUS_SCHEMA = 3,
  AXC_STATUS_NOT_GERM = 4,
  AXC_STATUS_CORANK = 5,
  AXC_STATUS_UNSUPPORTED = 6,
  AXC_STATUS_NUMERICAL = 7,
  AXC_STATUS_OUT_OF_RANGE = 8,
  AXC_STATUS_BUFFER_TOO_SMALL = 9,
  AXC_STATUS_VERIFY_FAILED = 10,
  AXC_STATUS_PANIC = 11,
} AxcStatus;

// Parsed germ.
typedef struct AxcGerm AxcGerm;

// Completed analysis with its report.
typedef struct AxcReport AxcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *axc_last_error(void);

// Parses a germ description (JSON, NUL-terminated).
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum AxcStatus axc_germ_parse(const char *json, struct AxcGerm **out);

// # Safety
// `germ` must come from [`axc_germ_parse`] and not be used afterwards.
void axc_germ_free(struct AxcGerm *germ);

// Runs the pipeline. A non-positive `tol` selects the default tolerance.
//
// # Safety
// `germ` must be a live handle and `out` a valid pointer.
enum AxcStatus axc_analyze(const struct AxcGerm *germ, double tol, struct AxcReport **out);

// # Safety
// `report` must come from [`axc_analyze`] and not be used afterwards.
void axc_report_free(struct AxcReport *report);

// Full report as JSON.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum AxcStatus axc_report_to_json(const struct AxcReport *report, char **out);

// # Safety
// `s` must come from this library and not be used afterwards.
void axc_string_free(char *s);

// Number of frame vectors, and so of axial directions.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum AxcStatus axc_report_axial_count(const struct AxcReport *report, size_t *out);

// Copies the axial curvatures of direction `i` (one-based) into `buf`.
// `len` receives the number of values even when `cap` is too small.
//
// # Safety
// `buf` must hold `cap` doubles (it may be null when `cap` is 0).
enum AxcStatus axc_report_axial_values(const struct AxcReport *report,
                                       size_t i,
                                       double *buf,
                                       size_t cap,
                                       size_t *len);

// Umbilic curvature; `defined` is false where it does not exist.
//
// # Safety
// All pointers must be valid.
enum AxcStatus axc_report_umbilic(const struct AxcReport *report, double *value, bool *defined);

// Locus point cloud as CSV. Zero counts and an empty range select the defaults.
//
// # Safety
// `report` must be a live handle and `out` a valid pointer.
enum AxcStatus axc_locus_csv(const struct AxcReport *report,
                             size_t thetas,
                             size_t gammas,
                             double gamma_lo,
                             double gamma_hi,
                             char **out);

// Counts failed consistency checks; returns `VerifyFailed` when any failed.
//
// # Safety
// `report` must be a live handle; `failed` may be null.
enum AxcStatus axc_verify(const struct AxcReport *report, size_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AXIALCURV_H */
