#ifndef PETERSSON_LAB_H
#define PETERSSON_LAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_INVALID_ARGUMENT = 1,
  PL_STATUS_POLE = 2,
  PL_STATUS_INSUFFICIENT_PRECISION = 3,
  PL_STATUS_DIVERGENT = 4,
  PL_STATUS_COMPUTATION = 5,
  PL_STATUS_NULL_POINTER = 6,
  PL_STATUS_OUT_OF_RANGE = 7,
  PL_STATUS_PANIC = 8,
} PlStatus;

typedef enum PlWitnessReason {
  PL_WITNESS_REASON_R_VANISHES = 0,
  PL_WITNESS_REASON_DET_VANISHES = 1,
  PL_WITNESS_REASON_MPRIME_RANK_DEFICIENT = 2,
} PlWitnessReason;

typedef enum PlGroup {
  PL_GROUP_GAMMA1 = 0,
  PL_GROUP_GAMMA0 = 1,
} PlGroup;

typedef enum PlSuite {
  PL_SUITE_DETERMINANTS = 0,
  PL_SUITE_ORACLE = 1,
  PL_SUITE_ADJOINT = 2,
  PL_SUITE_THEOREMS = 3,
} PlSuite;

/**
 * Opaque Gram matrix.
 */
typedef struct PlGram PlGram;

/**
 * Opaque nondegeneracy verdict.
 */
typedef struct PlVerdict PlVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated, truncated to `len`).
 * Returns the full message length excluding the terminator.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t pl_last_error(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pl_version(void);

/**
 * `L(s, χ)` (or `L'(s, χ)`) for the character with `char_index` mod `modulus`.
 *
 * # Safety
 * Output pointers must be valid for writes.
 */
enum PlStatus pl_lvalue(uint64_t modulus,
                        uint64_t char_index,
                        double s_re,
                        double s_im,
                        bool derivative,
                        double *out_re,
                        double *out_im,
                        double *out_error_bound);

/**
 * Builds the Gram matrix. `group_code` is a [`PlGroup`] code; `char_index < 0` selects Γ₁
 * or the principal nebentypus.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PlStatus pl_gram_new(uint64_t level,
                          uint32_t weight,
                          uint32_t group_code,
                          int64_t char_index,
                          struct PlGram **out);

/**
 * Basis dimension, 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t pl_gram_dim(const struct PlGram *h);

/**
 * # Safety
 * `h` must be a live handle; outputs valid for writes.
 */
enum PlStatus pl_gram_entry(const struct PlGram *h,
                            size_t i,
                            size_t j,
                            double *out_re,
                            double *out_im);

/**
 * # Safety
 * `h` must be null or a handle from [`pl_gram_new`] not yet freed.
 */
void pl_gram_free(struct PlGram *h);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum PlStatus pl_verdict_new(uint64_t level,
                             uint32_t weight,
                             uint32_t group_code,
                             int64_t char_index,
                             struct PlVerdict **out);

/**
 * # Safety
 * `h` must be a live handle; outputs valid for writes.
 */
enum PlStatus pl_verdict_result(const struct PlVerdict *h,
                                bool *nondegenerate,
                                bool *numeric_agrees);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
size_t pl_verdict_witness_count(const struct PlVerdict *h);

/**
 * # Safety
 * `h` must be a live handle; `out` valid for writes.
 */
enum PlStatus pl_verdict_witness_reason(const struct PlVerdict *h,
                                        size_t i,
                                        enum PlWitnessReason *out);

/**
 * # Safety
 * `h` must be null or a handle from [`pl_verdict_new`] not yet freed.
 */
void pl_verdict_free(struct PlVerdict *h);

/**
 * Level-1 renormalized norm of `E_k` on the truncated grid.
 *
 * # Safety
 * Outputs must be valid for writes.
 */
enum PlStatus pl_renorm(uint32_t weight,
                        double height,
                        size_t nx,
                        size_t ny,
                        double *out_integral,
                        double *out_reference);

/**
 * Runs the suite with [`PlSuite`] code `suite`; `passed` receives the outcome.
 *
 * # Safety
 * Outputs must be valid for writes.
 */
enum PlStatus pl_verify(uint32_t suite, uint64_t max_level, bool *passed, size_t *checks);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PETERSSON_LAB_H */
