#ifndef HAMCOH_H
#define HAMCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Values match the exit codes of the `hamcoh` binary
 * where both exist.
 */
typedef enum HamcohStatus {
  HAMCOH_STATUS_OK = 0,
  HAMCOH_STATUS_GENERIC = 1,
  HAMCOH_STATUS_PARSE = 2,
  HAMCOH_STATUS_RESOURCE_CAP = 3,
  HAMCOH_STATUS_CONSISTENCY = 4,
  HAMCOH_STATUS_IO = 5,
  HAMCOH_STATUS_INPUT = 6,
  HAMCOH_STATUS_NULL_ARGUMENT = 8,
  HAMCOH_STATUS_PANIC = 9,
} HamcohStatus;

/**
 * A cochain complex of one algebra and module, with its cell caches.
 */
typedef struct HamcohComplex HamcohComplex;

/**
 * Dimensions of one cell.
 */
typedef struct HamcohCellDims {
  size_t dim_c;
  size_t rank_z;
  size_t rank_b;
  size_t dim_h;
} HamcohCellDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hamcoh_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *hamcoh_last_error(void);

/**
 * Creates a complex for `spec` (e.g. "SH(0|4)") and `module` ("trivial" or
 * "adjoint") able to compute cells up to `max_degree` and `max_grade`.
 * `max_cell` caps cell sizes; 0 disables the cap.
 *
 * # Safety
 * `spec` and `module` must be NUL-terminated strings; `out` must be writable.
 */
enum HamcohStatus hamcoh_complex_new(const char *spec,
                                     const char *module,
                                     size_t max_degree,
                                     int64_t max_grade,
                                     size_t max_cell,
                                     struct HamcohComplex **out);

/**
 * Same as [`hamcoh_complex_new`] with the default cell cap.
 *
 * # Safety
 * As for [`hamcoh_complex_new`].
 */
enum HamcohStatus hamcoh_complex_new_default(const char *spec,
                                             const char *module,
                                             size_t max_degree,
                                             int64_t max_grade,
                                             struct HamcohComplex **out);

/**
 * # Safety
 * `cx` must come from [`hamcoh_complex_new`] and not be used afterwards.
 */
void hamcoh_complex_free(struct HamcohComplex *cx);

/**
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum HamcohStatus hamcoh_cell_dims(const struct HamcohComplex *cx,
                                   size_t degree,
                                   int64_t grade,
                                   struct HamcohCellDims *out);

/**
 * The JSON report for degrees `degree_lo..=degree_hi` and grades
 * `grade_lo..=grade_hi`.
 *
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum HamcohStatus hamcoh_table_json(const struct HamcohComplex *cx,
                                    size_t degree_lo,
                                    size_t degree_hi,
                                    int64_t grade_lo,
                                    int64_t grade_hi,
                                    char **out);

/**
 * Representative cocycles of one cell as a JSON array of cochain records.
 *
 * # Safety
 * `cx` must be a live handle; `out` must be writable.
 */
enum HamcohStatus hamcoh_cocycles_json(const struct HamcohComplex *cx,
                                       size_t degree,
                                       int64_t grade,
                                       char **out);

/**
 * Cup product of two serialized cochains: `{"product", "is_cocycle",
 * "is_coboundary"}` with `is_coboundary` null for non-cocycles.
 *
 * # Safety
 * `c1`, `c2` must be NUL-terminated JSON strings; `out` must be writable.
 */
enum HamcohStatus hamcoh_cup_json(const char *c1, const char *c2, char **out);

/**
 * Compares two serialized cocycles modulo coboundaries:
 * `{"equal", "lambda", "both_coboundaries"}` where `c1 ~ lambda c2`.
 *
 * # Safety
 * `c1`, `c2` must be NUL-terminated JSON strings; `out` must be writable.
 */
enum HamcohStatus hamcoh_compare_json(const char *c1, const char *c2, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hamcoh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAMCOH_H */
