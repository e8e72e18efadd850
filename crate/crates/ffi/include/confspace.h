#ifndef CONFSPACE_H
#define CONFSPACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_BUFFER_TOO_SMALL = 3,
  CS_STATUS_PANIC = 4,
  CS_STATUS_TREE = 10,
  CS_STATUS_DUPLICATE = 11,
  CS_STATUS_DIMENSION = 12,
  CS_STATUS_NON_FINITE = 13,
  CS_STATUS_NON_UNIT = 14,
  CS_STATUS_INDEX = 15,
  CS_STATUS_SCALE_BOUND = 16,
  CS_STATUS_NOT_NORMALIZED = 17,
  CS_STATUS_OUTSIDE_CHART = 18,
  CS_STATUS_EXCLUSIONS = 19,
  CS_STATUS_NO_INTERSECTION = 20,
  CS_STATUS_PARAMETER = 21,
  CS_STATUS_NOT_MONOTONE = 22,
  CS_STATUS_NOT_PLANAR = 23,
  CS_STATUS_MALFORMED = 24,
} CsStatus;

typedef enum CsVariant {
  CS_VARIANT_FULL = 0,
  CS_VARIANT_TRUNK = 1,
  CS_VARIANT_PLANAR = 2,
} CsVariant;

/**
 * A point of the canonical compactification.
 */
typedef struct CsAmbient CsAmbient;

/**
 * A finite configuration of distinct points.
 */
typedef struct CsConfig CsConfig;

/**
 * A point of the simplicial compactification.
 */
typedef struct CsSimplicial CsSimplicial;

/**
 * A stratum label.
 */
typedef struct CsTree CsTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library and valid until the next call.
 */
const char *cs_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void cs_string_free(char *s);

/**
 * Builds a configuration from `n * m` row-major coordinates.
 *
 * # Safety
 * `coords` must point to `n * m` doubles; `result` must be writable.
 */
enum CsStatus cs_config_new(size_t m, size_t n, const double *coords, struct CsConfig **result);

/**
 * # Safety
 * `c` must come from this library or be null.
 */
void cs_config_free(struct CsConfig *c);

/**
 * # Safety
 * `c` must be a live handle or null.
 */
size_t cs_config_n(const struct CsConfig *c);

/**
 * # Safety
 * `c` must be a live handle or null.
 */
size_t cs_config_m(const struct CsConfig *c);

/**
 * Copies the `n * m` row-major coordinates into `buf`.
 *
 * # Safety
 * `buf` must hold `len` doubles.
 */
enum CsStatus cs_config_coords(const struct CsConfig *c, double *buf, size_t len);

/**
 * # Safety
 * `c` must be a live handle; `result` writable.
 */
enum CsStatus cs_config_to_json(const struct CsConfig *c, char **result);

/**
 * # Safety
 * `json` must be a nul-terminated string; `result` writable.
 */
enum CsStatus cs_config_from_json(const char *json, struct CsConfig **result);

/**
 * # Safety
 * `c` must be a live handle; `result` writable.
 */
enum CsStatus cs_alpha(const struct CsConfig *c, struct CsAmbient **result);

/**
 * # Safety
 * `a` must come from this library or be null.
 */
void cs_ambient_free(struct CsAmbient *a);

/**
 * # Safety
 * `a` must be a live handle; `result` writable.
 */
enum CsStatus cs_ambient_to_json(const struct CsAmbient *a, char **result);

/**
 * # Safety
 * `json` must be a nul-terminated string; `result` writable.
 */
enum CsStatus cs_ambient_from_json(const char *json, struct CsAmbient **result);

/**
 * Checks membership in the canonical compactification of Euclidean
 * space of the point's dimension. `max_residual` may be null.
 *
 * # Safety
 * `a` must be a live handle; `pass` writable.
 */
enum CsStatus cs_membership_canonical(const struct CsAmbient *a,
                                      double tol,
                                      bool *pass,
                                      double *max_residual);

/**
 * # Safety
 * `a` must be a live handle; `result` writable.
 */
enum CsStatus cs_tree_of(const struct CsAmbient *a, double tol, struct CsTree **result);

/**
 * # Safety
 * `a` must be a live handle; `result` writable.
 */
enum CsStatus cs_project_q(const struct CsAmbient *a, struct CsSimplicial **result);

/**
 * # Safety
 * `p` must come from this library or be null.
 */
void cs_simplicial_free(struct CsSimplicial *p);

/**
 * # Safety
 * `p` must be a live handle; `result` writable.
 */
enum CsStatus cs_simplicial_to_json(const struct CsSimplicial *p, char **result);

/**
 * # Safety
 * `json` must be a nul-terminated string; `result` writable.
 */
enum CsStatus cs_simplicial_from_json(const char *json, struct CsSimplicial **result);

/**
 * # Safety
 * `p` must be a live handle; `pass` writable.
 */
enum CsStatus cs_membership_simplicial(const struct CsSimplicial *p,
                                       double tol,
                                       bool *pass,
                                       double *max_residual);

/**
 * # Safety
 * `p` must be a live handle; `result` writable.
 */
enum CsStatus cs_reconstruct_rho(const struct CsSimplicial *p,
                                 double tol,
                                 struct CsConfig **result);

/**
 * # Safety
 * `t` must come from this library or be null.
 */
void cs_tree_free(struct CsTree *t);

/**
 * # Safety
 * `t` must be a live handle or null.
 */
size_t cs_tree_codim(const struct CsTree *t);

/**
 * # Safety
 * `t` must be a live handle; `result` writable.
 */
enum CsStatus cs_tree_to_json(const struct CsTree *t, char **result);

/**
 * # Safety
 * `json` must be a nul-terminated string; `result` writable.
 */
enum CsStatus cs_tree_from_json(const char *json, struct CsTree **result);

/**
 * # Safety
 * `result` must be writable.
 */
enum CsStatus cs_count_trees(size_t n, enum CsVariant variant, size_t *result);

/**
 * Writes the `n + 1` face counts of the `n`-dimensional associahedron.
 *
 * # Safety
 * `buf` must hold `len` entries.
 */
enum CsStatus cs_f_vector(size_t n, size_t *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFSPACE_H */
