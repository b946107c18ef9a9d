#ifndef SIGMADELTA_H
#define SIGMADELTA_H

/* Auto-generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point. `SD_STATUS_OK` and
 * `SD_STATUS_FAIL` are verdicts; everything else is an error, with detail
 * available from `sd_last_error`.
 */
typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_FAIL = 1,
  SD_STATUS_ERR_PARSE = 2,
  SD_STATUS_ERR_SHAPE = 3,
  SD_STATUS_ERR_INVALID = 4,
  SD_STATUS_ERR_SINGULAR = 5,
  SD_STATUS_ERR_NULL_ARGUMENT = 6,
  SD_STATUS_ERR_OTHER = 7,
} SdStatus;

/**
 * Opaque handle to a σδ-linear system.
 */
typedef struct SdSystem SdSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sd_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 */
void sd_string_free(char *s);

/**
 * Parses a system-file JSON document into a new handle.
 */
enum SdStatus sd_system_parse(const char *json, struct SdSystem **out);

/**
 * The built-in Chebyshev system.
 */
enum SdStatus sd_system_chebyshev(struct SdSystem **out);

/**
 * Frees a system handle. NULL is ignored.
 */
void sd_system_free(struct SdSystem *sys);

/**
 * Serializes a system back to its JSON document form.
 */
enum SdStatus sd_system_serialize(const struct SdSystem *sys, char **out);

/**
 * σ(B)A = δ(A) + AB: `SD_STATUS_OK` when the identity holds exactly,
 * `SD_STATUS_FAIL` otherwise.
 */
enum SdStatus sd_system_check_integrability(const struct SdSystem *sys);

/**
 * Specializes t = c1 ("p/q") and reports whether the point is admissible.
 */
enum SdStatus sd_system_specialize_t(const struct SdSystem *sys, const char *c1);

/**
 * Catalog name of stab(m) for the Chebyshev family at t = c1 ("p/q").
 */
enum SdStatus sd_galois_stab_sigma(const char *c1, char **out);

/**
 * Catalog name of stab(n) at x = c2 ("p/q" or "nonrational").
 */
enum SdStatus sd_galois_stab_delta(const char *c2, char **out);

/**
 * Multiplicative order of α = c1 + √(c1²−1), or 0 when infinite.
 */
enum SdStatus sd_galois_alpha_order(const char *c1, uint32_t *out);

/**
 * G = stab(m)·stab(n): `SD_STATUS_OK` with both factorization witnesses
 * when the product covers G, `SD_STATUS_FAIL` otherwise.
 */
enum SdStatus sd_galois_product_check(const char *c1, const char *c2);

/**
 * Picard-Vessiot relations of the Chebyshev tower solution matrix.
 */
enum SdStatus sd_verify_pv_relations(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGMADELTA_H */
