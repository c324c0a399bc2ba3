#ifndef CUNTZ_ENDO_H
#define CUNTZ_ENDO_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CeStatus {
  CE_STATUS_OK = 0,
  CE_STATUS_NULL_POINTER = 1,
  CE_STATUS_INVALID_UTF8 = 2,
  CE_STATUS_USAGE = 3,
  CE_STATUS_DOMAIN = 4,
  CE_STATUS_RESOURCE = 5,
  CE_STATUS_PARSE = 6,
  CE_STATUS_IO = 7,
  CE_STATUS_PANIC = 8,
} CeStatus;

/**
 * Opaque element handle.
 */
typedef struct CeElement CeElement;

/**
 * Tolerance and size caps. `ce_config_default` fills in the library defaults.
 */
typedef struct CeConfig {
  double eps;
  size_t max_terms;
  size_t max_level;
} CeConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *ce_last_error(void);

struct CeConfig ce_config_default(void);

/**
 * Parses the element JSON format.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CeStatus ce_element_from_json(const char *json, struct CeElement **out);

/**
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum CeStatus ce_element_to_json(const struct CeElement *x, char **out);

/**
 * # Safety
 * `x` must be null or a handle from this library, not yet freed.
 */
void ce_element_free(struct CeElement *x);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ce_string_free(char *s);

/**
 * Number of generators, 0 for a null handle.
 *
 * # Safety
 * `x` must be null or a live handle.
 */
size_t ce_element_n(const struct CeElement *x);

/**
 * # Safety
 * Handles must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_element_mul(const struct CeElement *a,
                             const struct CeElement *b,
                             const struct CeConfig *cfg,
                             struct CeElement **out);

/**
 * # Safety
 * `x` must be live; `out` must be writable.
 */
enum CeStatus ce_element_adjoint(const struct CeElement *x, struct CeElement **out);

/**
 * Coefficient-wise comparison within `eps`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CeStatus ce_element_equals(const struct CeElement *a,
                                const struct CeElement *b,
                                double eps,
                                bool *out);

/**
 * `λ_u(x)`.
 *
 * # Safety
 * Handles must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_lambda_apply(const struct CeElement *u,
                              const struct CeElement *x,
                              const struct CeConfig *cfg,
                              struct CeElement **out);

/**
 * Unitary of `λ_u ∘ λ_w`.
 *
 * # Safety
 * Handles must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_compose(const struct CeElement *u,
                         const struct CeElement *w,
                         const struct CeConfig *cfg,
                         struct CeElement **out);

/**
 * # Safety
 * `x` must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_is_unitary(const struct CeElement *x, const struct CeConfig *cfg, bool *out);

/**
 * Decision report for `λ_w(D_n) ⊆ D_n` as JSON. `k = 0` uses the level of `w`.
 *
 * # Safety
 * `w` must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_decide(const struct CeElement *w,
                        size_t k,
                        const struct CeConfig *cfg,
                        char **out);

/**
 * Decision report for `λ_u(λ_z(D_n)) ⊆ λ_z(D_n)` as JSON.
 *
 * # Safety
 * Handles must be live; `cfg` may be null; `out` must be writable.
 */
enum CeStatus ce_standard_masa_invariance(const struct CeElement *u,
                                          const struct CeElement *z,
                                          const struct CeConfig *cfg,
                                          char **out);

/**
 * Izumi unitary for `ℤ_{orders[0]} × ⋯`.
 *
 * # Safety
 * `orders` must point to `len` values; `out` must be writable.
 */
enum CeStatus ce_izumi_unitary(const size_t *orders, size_t len, struct CeElement **out);

/**
 * The Fourier unitary `β` of the same group.
 *
 * # Safety
 * `orders` must point to `len` values; `out` must be writable.
 */
enum CeStatus ce_izumi_beta(const size_t *orders, size_t len, struct CeElement **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUNTZ_ENDO_H */
