#ifndef QUASI_DOUBLE_H
#define QUASI_DOUBLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QdStatus {
  QD_STATUS_OK = 0,
  // A report was produced and at least one check failed.
  QD_STATUS_CHECK_FAILED = 1,
  // Unreadable input: I/O, JSON or an invalid group table or cocycle.
  QD_STATUS_PARSE_ERROR = 2,
  // The input is well formed but violates a precondition or a structural check.
  QD_STATUS_PRECONDITION = 3,
  // A null pointer, non-UTF-8 string or non-positive tolerance.
  QD_STATUS_INVALID_ARGUMENT = 4,
  // A panic was caught at the boundary.
  QD_STATUS_INTERNAL = 5,
} QdStatus;

typedef struct QdAlgebra QdAlgebra;

typedef struct QdDouble QdDouble;

typedef struct QdReport QdReport;

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *qd_last_error(void);

// Library version as a static NUL-terminated string.
const char *qd_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer returned by `qd_report_jsonl`, not yet freed.
void qd_string_free(char *s);

// Loads a built-in algebra (`cz2`, `cs3`, `h4`, `fun_z2_omega`, ...) or an
// algebra file by path.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be valid for one write.
enum QdStatus qd_algebra_load(const char *name, struct QdAlgebra **out);

// Dimension of the algebra, 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle from `qd_algebra_load`.
size_t qd_algebra_dim(const struct QdAlgebra *a);

// Whether the algebra carries an R-matrix.
//
// # Safety
// `a` must be null or a live handle from `qd_algebra_load`.
bool qd_algebra_has_r(const struct QdAlgebra *a);

// # Safety
// `a` must be null or a live handle from `qd_algebra_load`, not yet freed.
void qd_algebra_free(struct QdAlgebra *a);

// Quasi-Hopf suite, plus the quasitriangular suite when R is present.
// Returns `Ok` or `CheckFailed`; the report is written in both cases.
//
// # Safety
// `a` must be a live algebra handle; `out` must be valid for one write.
enum QdStatus qd_verify(const struct QdAlgebra *a, double tol, struct QdReport **out);

// Builds D(G) from a quasi-Hopf algebra with ε(α) = 1.
//
// # Safety
// `a` must be a live algebra handle; `out` must be valid for one write.
enum QdStatus qd_double_build(const struct QdAlgebra *a, double tol, struct QdDouble **out);

// Dimension of D(G), 0 for a null handle.
//
// # Safety
// `d` must be null or a live handle from `qd_double_build`.
size_t qd_double_dim(const struct QdDouble *d);

// Full verification suite of a built double.
//
// # Safety
// `d` must be a live double handle; `out` must be valid for one write.
enum QdStatus qd_double_verify(const struct QdDouble *d, double tol, struct QdReport **out);

// # Safety
// `d` must be null or a live handle from `qd_double_build`, not yet freed.
void qd_double_free(struct QdDouble *d);

// D^ω(G) checked against the generic double of Fun(G)^ω. `group` is `z2`,
// `zN`, `s3` or a path; `cocycle` is `trivial`, `standard:p` or a path.
//
// # Safety
// `group` and `cocycle` must be NUL-terminated strings; `out` must be valid for one write.
enum QdStatus qd_twisted_double(const char *group,
                                const char *cocycle,
                                double tol,
                                struct QdReport **out);

// Whether every gated check passed; false for a null handle.
//
// # Safety
// `r` must be null or a live report handle.
bool qd_report_passed(const struct QdReport *r);

// Number of entries (checks and notes) in the report.
//
// # Safety
// `r` must be null or a live report handle.
size_t qd_report_len(const struct QdReport *r);

// Largest residual in the report.
//
// # Safety
// `r` must be null or a live report handle.
double qd_report_max_residual(const struct QdReport *r);

// The report as JSON lines; release with `qd_string_free`. Null on a null handle.
//
// # Safety
// `r` must be null or a live report handle.
char *qd_report_jsonl(const struct QdReport *r);

// # Safety
// `r` must be null or a live report handle, not yet freed.
void qd_report_free(struct QdReport *r);

#endif  /* QUASI_DOUBLE_H */
