#ifndef MINOR_TOOLKIT_H
#define MINOR_TOOLKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  MT_STATUS_OK = 0,
  MT_STATUS_NULL_POINTER = 1,
  MT_STATUS_INVALID_ARGUMENT = 2,
  MT_STATUS_PARSE_ERROR = 3,
  // The graph exceeds the oracle's exact size limit.
  MT_STATUS_TOO_LARGE = 4,
  MT_STATUS_BUDGET_EXHAUSTED = 5,
  // An internal panic was caught.
  MT_STATUS_PANIC = 6,
} MtStatus;

// Opaque graph handle.
typedef struct MtGraph MtGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on this thread.
const char *mt_last_error(void);

// Parses one graph6 record (NUL-terminated, optional trailing newline).
//
// # Safety
// `text` must be a valid C string and `out` writable.
MtStatus mt_graph_from_graph6(const char *text, MtGraph **out);

// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
//
// # Safety
// `edges` must point to `2 * m` values (it may be null when `m == 0`) and
// `out` must be writable.
MtStatus mt_graph_from_edges(size_t n, const size_t *edges, size_t m, MtGraph **out);

// Releases a handle; null is ignored.
//
// # Safety
// `g` must come from this library and not be used afterwards.
void mt_graph_free(MtGraph *g);

// # Safety
// `g` must be a live handle; `vertices` and `edges` writable.
MtStatus mt_graph_counts(const MtGraph *g, size_t *vertices, size_t *edges);

// graph6 encoding; free the result with `mt_string_free`.
//
// # Safety
// `g` must be a live handle and `out` writable.
MtStatus mt_graph_to_graph6(const MtGraph *g, char **out);

// # Safety
// `s` must come from this library; null is ignored.
void mt_string_free(char *s);

// Exact chromatic number. When `coloring` is non-null it receives one
// color per vertex (`0..chi`).
//
// # Safety
// `g` must be a live handle, `chi` writable, and `coloring` null or
// writable for `n` values.
MtStatus mt_chromatic_number(const MtGraph *g, size_t *chi, size_t *coloring);

// Hadwiger number. `exact` is set to 0 when only a certified lower bound
// was reached.
//
// # Safety
// `g` must be a live handle; `h` and `exact` writable.
MtStatus mt_hadwiger_number(const MtGraph *g, size_t *h, bool *exact);

// # Safety
// `g` must be a live handle and `kappa` writable.
MtStatus mt_vertex_connectivity(const MtGraph *g, size_t *kappa);

// # Safety
// `g` must be a live handle and `alpha` writable.
MtStatus mt_independence_number(const MtGraph *g, size_t *alpha);

// Hall ratio as the reduced fraction `numerator / denominator`.
//
// # Safety
// `g` must be a live handle; both outputs writable.
MtStatus mt_hall_ratio(const MtGraph *g, int64_t *numerator, int64_t *denominator);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MINOR_TOOLKIT_H */
