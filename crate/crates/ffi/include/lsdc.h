#ifndef LSDC_H
#define LSDC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum LsdcStatus {
  LSDC_STATUS_OK = 0,
  LSDC_STATUS_NULL_POINTER = 1,
  LSDC_STATUS_INVALID_UTF8 = 2,
  /**
   * Bad shape, field, domain or value.
   */
  LSDC_STATUS_INVALID_ARGUMENT = 3,
  LSDC_STATUS_RESOURCE_LIMIT = 4,
  LSDC_STATUS_NO_SOLUTION = 5,
  LSDC_STATUS_PARSE = 6,
  LSDC_STATUS_IO = 7,
  /**
   * The scheme loaded but `D E != F`.
   */
  LSDC_STATUS_VERIFY_FAILED = 8,
  /**
   * A panic was caught at the boundary.
   */
  LSDC_STATUS_INTERNAL = 9,
} LsdcStatus;

/**
 * Decoding-matrix construction for [`lsdc_build_coded`].
 */
typedef enum LsdcStrategy {
  LSDC_STRATEGY_FULL_COVERING = 0,
  LSDC_STRATEGY_PARTIAL_COVERING = 1,
  LSDC_STRATEGY_PARTIAL_COVERING_EXACT = 2,
} LsdcStrategy;

/**
 * Opaque scheme handle.
 */
typedef struct LsdcScheme LsdcScheme;

/**
 * Shape of a scheme.
 */
typedef struct LsdcDims {
  uint32_t q;
  size_t k;
  size_t n;
  size_t l;
  size_t t;
} LsdcDims;

/**
 * Exact costs as reduced fractions.
 */
typedef struct LsdcCosts {
  uint64_t gamma_num;
  uint64_t gamma_den;
  uint64_t delta_num;
  uint64_t delta_den;
} LsdcCosts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *lsdc_last_error_message(void);

/**
 * Parses a scheme from JSON. The scheme is not verified; see
 * [`lsdc_scheme_verify`].
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum LsdcStatus lsdc_scheme_from_json(const char *json, struct LsdcScheme **out);

/**
 * Serializes a scheme; free the result with [`lsdc_string_free`].
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum LsdcStatus lsdc_scheme_to_json(const struct LsdcScheme *scheme, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void lsdc_string_free(char *s);

/**
 * # Safety
 * `scheme` must come from this library or be null, and is dead afterwards.
 */
void lsdc_scheme_free(struct LsdcScheme *scheme);

/**
 * The worked example over GF(7) with K = 4, N = 8, L = 6.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsdcStatus lsdc_worked_example(struct LsdcScheme **out);

/**
 * Builds a coded scheme for the row-major K x L demand matrix `f`.
 * A negative `radius` lets the builder choose it.
 *
 * # Safety
 * `f` must hold `k * l` values and `out` be writable.
 */
enum LsdcStatus lsdc_build_coded(uint32_t q,
                                 const uint32_t *f,
                                 size_t k,
                                 size_t l,
                                 size_t n,
                                 enum LsdcStrategy strategy,
                                 int radius,
                                 uint64_t seed,
                                 struct LsdcScheme **out);

/**
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum LsdcStatus lsdc_scheme_dims(const struct LsdcScheme *scheme, struct LsdcDims *out);

/**
 * Checks `D E = F`. Returns [`LsdcStatus::VerifyFailed`] naming the first
 * wrong entry (1-based) otherwise.
 *
 * # Safety
 * `scheme` must be a live handle.
 */
enum LsdcStatus lsdc_scheme_verify(const struct LsdcScheme *scheme);

/**
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum LsdcStatus lsdc_scheme_costs(const struct LsdcScheme *scheme, struct LsdcCosts *out);

/**
 * One round on file values `w` (length L). Writes `F w` and the users'
 * decoded values `D z` (length K each) and whether they agree.
 *
 * # Safety
 * `w` must hold L values, `demanded` and `decoded` room for K, `correct`
 * be writable; the two output arrays may be null.
 */
enum LsdcStatus lsdc_run_round(const struct LsdcScheme *scheme,
                               const uint32_t *w,
                               uint32_t *demanded,
                               uint32_t *decoded,
                               bool *correct);

/**
 * q-ary entropy on `[0, 1 - 1/q]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsdcStatus lsdc_entropy_q(double x, uint32_t q, double *out);

/**
 * Inverse of [`lsdc_entropy_q`] on `[0, 1]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsdcStatus lsdc_entropy_q_inv(double y, uint32_t q, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LSDC_H */
