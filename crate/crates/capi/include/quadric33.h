#ifndef QUADRIC33_H
#define QUADRIC33_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Flags for `q33_classify_json`.
 */
#define Q33_CLASSIFY_SKIP_SING 1

#define Q33_CLASSIFY_CERTIFY_ONLY 2

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum Q33Status {
  Q33_STATUS_OK = 0,
  Q33_STATUS_NULL_POINTER = 1,
  Q33_STATUS_INVALID_UTF8 = 2,
  Q33_STATUS_PARSE_ERROR = 3,
  Q33_STATUS_WRONG_BIDEGREE = 4,
  Q33_STATUS_TOWER_TOO_DEEP = 5,
  Q33_STATUS_INVALID_ARGUMENT = 6,
  Q33_STATUS_INTERNAL_ERROR = 7,
} Q33Status;

/**
 * Opaque handle to a parsed bidegree-(3,3) curve.
 */
typedef struct Q33Curve Q33Curve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a curve expression over X, Y, Z, W (and optionally the generator t
 * of Q[t]/(field_spec)) into an opaque handle.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string; `field_spec` may be NULL;
 * `out` must be a valid pointer slot. The handle must be released with
 * `q33_curve_free`.
 */
enum Q33Status q33_curve_parse(const char *expr, const char *field_spec, struct Q33Curve **out);

/**
 * Release a curve handle.
 *
 * # Safety
 * `curve` must be a pointer previously returned by `q33_curve_parse`, not
 * yet freed; NULL is a no-op.
 */
void q33_curve_free(struct Q33Curve *curve);

/**
 * Classify a curve; on success writes a JSON report string to `out`.
 *
 * # Safety
 * `curve` must be a live handle from `q33_curve_parse`; `out` must be a
 * valid pointer slot. The string must be released with `q33_string_free`.
 */
enum Q33Status q33_classify_json(const struct Q33Curve *curve, uint32_t flags, char **out);

/**
 * Divisor-calculus queries. `subcommand` is one of "chow", "lambda-delta",
 * "pullback", "discrepancy", "polarization", "moving-slope", "petri"; the
 * rational alpha_num/alpha_den is read only by the alpha-dependent queries.
 *
 * # Safety
 * `subcommand` must be a valid NUL-terminated string and `out` a valid
 * pointer slot; release the string with `q33_string_free`.
 */
enum Q33Status q33_divisor_json(const char *subcommand,
                                int64_t alpha_num,
                                int64_t alpha_den,
                                char **out);

/**
 * Run the fixture corpus; returns 0 when every entry passes, 1 otherwise,
 * and writes a JSON summary to `out` when non-NULL.
 *
 * # Safety
 * `out` may be NULL or a valid pointer slot; release the string with
 * `q33_string_free`.
 */
int32_t q33_corpus_run(uint32_t jobs, char **out);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a q33_* function, not yet
 * freed; NULL is a no-op.
 */
void q33_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADRIC33_H */
