#ifndef REGMAPS_H
#define REGMAPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RmStatus {
  RM_STATUS_OK = 0,
  RM_STATUS_NULL_POINTER = 1,
  RM_STATUS_INVALID_UTF8 = 2,
  RM_STATUS_UNKNOWN_TARGET = 3,
  RM_STATUS_PARSE = 4,
  RM_STATUS_INVALID_ARGUMENT = 5,
  RM_STATUS_NOT_ON_VARIETY = 6,
  RM_STATUS_DENOMINATOR_ZERO = 7,
  RM_STATUS_VARIETY_MISMATCH = 8,
  RM_STATUS_BUFFER_TOO_SMALL = 9,
  RM_STATUS_VERIFICATION_FAILED = 10,
  RM_STATUS_NON_CONVERGENT = 11,
  RM_STATUS_INTERNAL = 12,
  RM_STATUS_PANIC = 13,
} RmStatus;

/**
 * Opaque map handle.
 */
typedef struct RmMap RmMap;

/**
 * Monte Carlo degree estimate.
 */
typedef struct RmDegree {
  double estimate;
  double half_width;
  int64_t rounded;
  uint64_t samples;
  uint64_t seed;
  bool conclusive;
} RmDegree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library and valid until the next failing call on this thread.
 */
const char *rm_last_error_message(void);

/**
 * Builds a catalog map such as `"oplus:2"` or `"chain:4:2"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum RmStatus rm_map_from_catalog(const char *name, struct RmMap **out);

/**
 * Reads a map from its JSON file format; objects with `rows` are matrix maps.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RmStatus rm_map_from_json(const char *json, struct RmMap **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `map` must come from this library and not be used afterwards.
 */
void rm_map_free(struct RmMap *map);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rm_string_free(char *s);

/**
 * Serializes a map to its canonical JSON file format.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_map_to_json(const struct RmMap *map, char **out);

/**
 * Composes `f ∘ g` into a new handle.
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be writable.
 */
enum RmStatus rm_map_compose(const struct RmMap *f, const struct RmMap *g, struct RmMap **out);

/**
 * Ambient coordinate counts of the domain and codomain.
 *
 * # Safety
 * `map` must be a live handle; both outputs must be writable.
 */
enum RmStatus rm_map_dims(const struct RmMap *map, size_t *domain, size_t *codomain);

/**
 * Evaluates in floating point. `x` holds the domain coordinates and `out`
 * receives the codomain coordinates.
 *
 * # Safety
 * `x` must point to `x_len` readable doubles, `out` to `out_len` writable ones.
 */
enum RmStatus rm_map_eval_f64(const struct RmMap *map,
                              const double *x,
                              size_t x_len,
                              double *out,
                              size_t out_len);

/**
 * Winding number of a self-map of S^1.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_winding(const struct RmMap *map, int64_t *out);

/**
 * Monte Carlo degree of a self-map of S^n, n >= 2.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_degree_mc(const struct RmMap *map,
                           uint64_t samples,
                           uint64_t seed,
                           struct RmDegree *out);

/**
 * Runs the verification suites of a catalog target. Returns
 * `RM_STATUS_VERIFICATION_FAILED` when any check fails; the JSON report is
 * written to `report` in both cases when it is not NULL.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `report` must be NULL or writable.
 */
enum RmStatus rm_verify_target(const char *name,
                               size_t trials,
                               size_t samples,
                               uint64_t seed,
                               char **report);

/**
 * Radon-Hurwitz number `a_p`, p >= 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum RmStatus rm_radon_hurwitz(uint64_t p, uint64_t *out);

/**
 * Whether `k + 1` is divisible by `a_{m+2}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RmStatus rm_check_codim_pair(uint64_t m, uint64_t k, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGMAPS_H */
