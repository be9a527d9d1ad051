#ifndef GRAPHMAX_H
#define GRAPHMAX_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GmStatus {
  GM_STATUS_OK = 0,
  GM_STATUS_NULL_POINTER = 1,
  GM_STATUS_INVALID_GRAPH = 2,
  GM_STATUS_INVALID_ARGUMENT = 3,
  GM_STATUS_CAP_EXCEEDED = 4,
  GM_STATUS_UNSUPPORTED = 5,
  GM_STATUS_PARSE = 6,
  GM_STATUS_PANIC = 7,
} GmStatus;

/**
 * Opaque graph handle. Release with [`gm_graph_free`].
 */
typedef struct GmGraph GmGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *gm_last_error(void);

/**
 * Builds a graph from `edge_count` pairs in `edges` (length `2 * edge_count`, 1-based).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values and `out` must be writable.
 */
enum GmStatus gm_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct GmGraph **out);

/**
 * Builds `complete`, `star`, `path` or `cycle` on `n` vertices.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` must be writable.
 */
enum GmStatus gm_graph_named(const char *family, size_t n, struct GmGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice. Null is ignored.
 */
void gm_graph_free(struct GmGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum GmStatus gm_graph_vertex_count(const struct GmGraph *g, size_t *out);

/**
 * Writes `M f` into `out`; both buffers hold `len` values.
 *
 * # Safety
 * `f` and `out` must point to `len` doubles.
 */
enum GmStatus gm_eval_maximal(const struct GmGraph *g, const double *f, size_t len, double *out);

/**
 * Exact strong norm for `p <= 1` or `p = inf`. When `text_out` is not null it
 * receives the value as a string (`"p/q"` when rational), freed by [`gm_string_free`].
 *
 * # Safety
 * `p` must be a NUL-terminated string; `value` must be writable.
 */
enum GmStatus gm_strong_norm_exact(const struct GmGraph *g,
                                   const char *p,
                                   double *value,
                                   char **text_out);

/**
 * Optimizer lower estimate of the strong norm for `p > 1`. `restarts = 0` keeps the
 * default. `witness` may be null, otherwise it receives `n` values.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum GmStatus gm_strong_norm_estimate(const struct GmGraph *g,
                                      const char *p,
                                      uint64_t seed,
                                      size_t restarts,
                                      double *value,
                                      double *witness);

/**
 * Optimizer lower estimate of the weak-type norm, never below the delta bound.
 *
 * # Safety
 * Pointers must be valid as described for [`gm_strong_norm_estimate`].
 */
enum GmStatus gm_weak_norm_estimate(const struct GmGraph *g,
                                    const char *p,
                                    uint64_t seed,
                                    size_t restarts,
                                    double *value,
                                    double *witness);

/**
 * Restricted-type norm (supremum over indicators).
 *
 * # Safety
 * `p` must be a NUL-terminated string; `value` must be writable.
 */
enum GmStatus gm_restricted_norm(const struct GmGraph *g, const char *p, double *value);

/**
 * Dilation index with the 1-based vertex and radius attaining it. `vertex` and
 * `radius` may be null.
 *
 * # Safety
 * `value` must be writable.
 */
enum GmStatus gm_dilation_index(const struct GmGraph *g,
                                double *value,
                                size_t *vertex,
                                size_t *radius);

/**
 * Exact overlapping index; fails with `GM_STATUS_CAP_EXCEEDED` on large graphs.
 *
 * # Safety
 * `value` must be writable.
 */
enum GmStatus gm_overlapping_index(const struct GmGraph *g, size_t *value);

/**
 * Maximizing ratio `alpha` for the two-vertex graph at `p > 1`.
 *
 * # Safety
 * `p` must be a NUL-terminated string; `alpha` must be writable.
 */
enum GmStatus gm_k2_alpha_root(const char *p, double *alpha);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void gm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHMAX_H */
