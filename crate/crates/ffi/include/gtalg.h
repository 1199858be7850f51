#ifndef GTALG_H
#define GTALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum gt_status {
  GT_STATUS_OK = 0,
  GT_STATUS_NULL_POINTER = 1,
  GT_STATUS_INVALID_UTF8 = 2,
  GT_STATUS_PARSE = 3,
  GT_STATUS_BOUND_MISMATCH = 4,
  GT_STATUS_CONSTANT_TERM = 5,
  GT_STATUS_NOT_INVERTIBLE = 6,
  GT_STATUS_DIVERGENT = 7,
  GT_STATUS_PRECISION = 8,
  GT_STATUS_TRUNCATION = 9,
  GT_STATUS_DOMAIN = 10,
  GT_STATUS_CONFIG = 11,
  GT_STATUS_IO = 12,
  GT_STATUS_BUFFER_TOO_SMALL = 13,
  GT_STATUS_PANIC = 14,
} gt_status;

typedef enum gt_convention {
  // Generators indexed from 0: degrees 1, 5, 9, ... and 2, 6, 10, ...
  GT_CONVENTION_FROM_ZERO = 0,
  // Generators indexed from 1: degrees 5, 9, ... and 6, 10, ...
  GT_CONVENTION_FROM_ONE = 1,
} gt_convention;

// Opaque manifold model handle.
typedef struct gt_manifold gt_manifold;

// Opaque polynomial handle.
typedef struct gt_polynomial gt_polynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *gt_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gt_string_free(char *s);

// Parses `3*c[1]^2 - 2*c[2]` style text.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum gt_status gt_polynomial_parse(const char *text_in, struct gt_polynomial **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum gt_status gt_polynomial_to_string(const struct gt_polynomial *p, char **out);

// Product of two polynomials as a new handle.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum gt_status gt_polynomial_mul(const struct gt_polynomial *a,
                                 const struct gt_polynomial *b,
                                 struct gt_polynomial **out);

// # Safety
// `p` must be null or a handle not yet freed.
void gt_polynomial_free(struct gt_polynomial *p);

// Catalog model (`CP2`, `CP1xCP1`, `point`).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum gt_status gt_manifold_catalog(const char *name, struct gt_manifold **out);

// Model from its JSON presentation.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum gt_status gt_manifold_from_json(const char *json, struct gt_manifold **out);

// Complex dimension, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
uint32_t gt_manifold_dimension(const struct gt_manifold *m);

// # Safety
// `m` must be null or a handle not yet freed.
void gt_manifold_free(struct gt_manifold *m);

// `ch_k` of the tangent bundle as a new polynomial handle.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum gt_status gt_chern_character(const struct gt_manifold *m,
                                  uint32_t k,
                                  struct gt_polynomial **out);

// Genus for a named series (`A-hat`, `Todd`, `L`, `Gamma`), as text.
//
// # Safety
// `m` must be a live handle; `series` a nul-terminated string; `out` writable.
enum gt_status gt_genus_compute(const struct gt_manifold *m, const char *series, char **out);

// Deformed genus; `params` uses the `1:1/3,3:0` syntax.
//
// # Safety
// `m` must be a live handle; strings nul-terminated; `out` writable.
enum gt_status gt_genus_deform(const struct gt_manifold *m,
                               const char *series,
                               const char *params,
                               enum gt_convention convention,
                               char **out);

// Rewrites `expr` (given in basis `from`, one of E, P, H, M) in basis `to`.
//
// # Safety
// Strings must be nul-terminated; `out` writable.
enum gt_status gt_symm_convert(const char *from, const char *to, const char *expr, char **out);

// Checks `d-classes`, `chern-newton` or `a-classes` through `max_weight`.
// `first_mismatch` receives 0 on an exact match.
//
// # Safety
// `which` must be nul-terminated; output pointers writable.
enum gt_status gt_identity_check(const char *which,
                                 uint32_t max_weight,
                                 bool *exact_match,
                                 uint32_t *first_mismatch);

// Certified multizeta value of an index such as `(2,3)`.
//
// # Safety
// `index` must be nul-terminated; output pointers writable.
enum gt_status gt_mzv_eval(const char *index,
                           double target_error,
                           double *value,
                           double *error_bound);

// Tor table of `exterior:5,9`-style algebras as `s,t,total,dim` CSV.
//
// # Safety
// `algebra` must be nul-terminated; `out` writable.
enum gt_status gt_tor_csv(const char *algebra, uint32_t bound, char **out);

// Dimensions of `sOmega`, `THH` or `KTheoryFiber` in degrees `0..=bound`,
// written to `dims[0..=bound]`. `capacity` must be at least `bound + 1`.
//
// # Safety
// `which` must be nul-terminated; `dims` must have room for `capacity` values.
enum gt_status gt_series_dims(const char *which,
                              uint32_t bound,
                              enum gt_convention convention,
                              uint64_t *dims,
                              size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GTALG_H */
