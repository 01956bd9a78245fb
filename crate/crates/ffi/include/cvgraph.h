#ifndef CVGRAPH_H
#define CVGRAPH_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CvgStatus {
  CVG_STATUS_OK = 0,
  CVG_STATUS_NULL_POINTER = 1,
  CVG_STATUS_INVALID_ARGUMENT = 2,
  CVG_STATUS_VANISHING_SUCCESS_PROBABILITY = 3,
  CVG_STATUS_NUMERICAL = 4,
  CVG_STATUS_BUFFER_TOO_SMALL = 5,
  CVG_STATUS_PANIC = 6,
} CvgStatus;

typedef enum CvgSign {
  CVG_SIGN_ADD = 0,
  CVG_SIGN_SUBTRACT = 1,
} CvgSign;

// Opaque graph handle.
typedef struct CvgGraph CvgGraph;

// Opaque handle to a graph state after one photon addition or subtraction.
typedef struct CvgState CvgState;

// Single-vertex indicators, mirroring the library's per-vertex metrics.
typedef struct CvgVertexMetrics {
  double kurtosis_x;
  double kurtosis_p;
  double purity;
  double purity_gaussian;
  double relative_purity;
  double negativity_trace;
  bool negative;
} CvgVertexMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failed call on this thread, or null after a
// successful one. Valid until the next `cvg_*` call on the same thread.
const char *cvg_last_error_message(void);

// Builds a graph on `m` vertices from `n_edges` pairs stored flat in `edges`
// (`2 * n_edges` indices).
//
// # Safety
// `edges` must point to `2 * n_edges` readable values (or be null when
// `n_edges == 0`); `out` must be writable.
enum CvgStatus cvg_graph_from_edges(size_t m,
                                    const size_t *edges,
                                    size_t n_edges,
                                    struct CvgGraph **out);

// Triangular lattice with row-major vertex numbering.
//
// # Safety
// `out` must be writable.
enum CvgStatus cvg_graph_triangular(size_t rows, size_t cols, struct CvgGraph **out);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t cvg_graph_vertex_count(const struct CvgGraph *graph);

// # Safety
// `graph` must be null or a handle not yet freed.
void cvg_graph_free(struct CvgGraph *graph);

// Builds the graph state with per-vertex squeezing `db` (length `m`) and
// applies one photon addition or subtraction in the mode with coefficients
// `re + i im` (length `m` each; `im` may be null for real modes). The mode
// must be normalised to within 1e-12.
//
// # Safety
// `graph` must be a live handle, array arguments must hold `m` values and
// `out` must be writable.
enum CvgStatus cvg_state_new(const struct CvgGraph *graph,
                             const double *db,
                             enum CvgSign sign,
                             const double *re,
                             const double *im,
                             struct CvgState **out);

// # Safety
// `state` must be null or a handle not yet freed.
void cvg_state_free(struct CvgState *state);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `state` must be null or a live handle.
size_t cvg_state_vertex_count(const struct CvgState *state);

// Copies the `2m × 2m` covariance matrix into `out` (row-major).
//
// # Safety
// `state` must be a live handle and `out` must hold `len` writable values.
enum CvgStatus cvg_state_covariance(const struct CvgState *state, double *out, size_t len);

// Copies the `2m × 2m` non-Gaussian correction matrix into `out` (row-major).
//
// # Safety
// `state` must be a live handle and `out` must hold `len` writable values.
enum CvgStatus cvg_state_nongauss_matrix(const struct CvgState *state, double *out, size_t len);

// Metrics of the single-vertex reduction on `vertex`.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvgStatus cvg_state_vertex_metrics(const struct CvgState *state,
                                        size_t vertex,
                                        struct CvgVertexMetrics *out);

// Reduced Wigner function on `n` distinct vertices, evaluated at `beta`
// (`2n` values ordered `(x_1..x_n, p_1..p_n)` over the vertices sorted
// ascending).
//
// # Safety
// `vertices` must hold `n` values, `beta` `2n` values, `out` be writable.
enum CvgStatus cvg_state_wigner(const struct CvgState *state,
                                const size_t *vertices,
                                size_t n,
                                const double *beta,
                                double *out);

// Largest `|A|` entry outside the closed 2-neighbourhood of the mode's
// support, and whether it is within the locality tolerance.
//
// # Safety
// `state` must be a live handle; outputs must be writable.
enum CvgStatus cvg_state_locality(const struct CvgState *state, double *max_outside, bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CVGRAPH_H */
