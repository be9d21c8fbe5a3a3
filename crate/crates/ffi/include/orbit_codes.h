#ifndef ORBIT_CODES_H
#define ORBIT_CODES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum OcStatus {
  OC_STATUS_OK = 0,
  OC_STATUS_NULL_POINTER = 1,
  OC_STATUS_INVALID_ARGUMENT = 2,
  OC_STATUS_PARSE = 3,
  OC_STATUS_ARITHMETIC = 4,
  OC_STATUS_RESOURCE_LIMIT = 5,
  OC_STATUS_INTERNAL = 6,
} OcStatus;

/**
 * A finite field GF(p^m).
 */
typedef struct OcField OcField;

/**
 * A matrix over an [`OcField`].
 */
typedef struct OcMatrix OcMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *oc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void oc_string_free(char *s);

/**
 * Builds GF(p^m) with the default modulus.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum OcStatus oc_field_new(uint32_t p, uint32_t m, struct OcField **out);

/**
 * Parses a field designator such as `"2^2"`, with an optional modulus
 * (`"1,1,1"`, may be null).
 *
 * # Safety
 * String arguments must be nul-terminated or null; `out` must be valid for writes.
 */
enum OcStatus oc_field_parse(const char *designator, const char *modulus, struct OcField **out);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t oc_field_size(const struct OcField *field);

/**
 * # Safety
 * `field` must be null or a live handle; it is invalid afterwards.
 */
void oc_field_free(struct OcField *field);

/**
 * Builds a `rows x cols` matrix from row-major element codes.
 *
 * # Safety
 * `data` must point to `rows * cols` readable values; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_new(const struct OcField *field,
                            uintptr_t rows,
                            uintptr_t cols,
                            const uint32_t *data,
                            struct OcMatrix **out);

/**
 * Parses a matrix in row text form (`"0,1;1,1"`).
 *
 * # Safety
 * `text` must be nul-terminated; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_parse(const struct OcField *field, const char *text, struct OcMatrix **out);

/**
 * # Safety
 * `m` must be null or a live handle; it is invalid afterwards.
 */
void oc_matrix_free(struct OcMatrix *m);

/**
 * Row text form of `m`, released with [`oc_string_free`].
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_to_string(const struct OcMatrix *m, char **out);

/**
 * Multiplicative order of an invertible matrix.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_order(const struct OcMatrix *m, uint64_t *out);

/**
 * Rational canonical form of `m` as a new handle.
 *
 * # Safety
 * `m` must be a live handle; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_rcf(const struct OcMatrix *m, struct OcMatrix **out);

/**
 * Whether `a` and `b` are similar.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
enum OcStatus oc_matrix_similar(const struct OcMatrix *a, const struct OcMatrix *b, bool *out);

/**
 * Whether the cyclic groups generated by `a` and `b` have equal signatures.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
enum OcStatus oc_cyclic_conjugate(const struct OcMatrix *a, const struct OcMatrix *b, bool *out);

/**
 * JSON report of the orbit code of `subspace` under the block generator
 * built from `divisors` (`"1,1,0,1;1,1"`). Release with [`oc_string_free`].
 *
 * # Safety
 * String arguments must be nul-terminated; `out` must be valid for writes.
 */
enum OcStatus oc_code_report_json(const struct OcField *field,
                                  const char *divisors,
                                  const char *subspace,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBIT_CODES_H */
