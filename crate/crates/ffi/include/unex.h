#ifndef UNEX_H
#define UNEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Expansion property for [`unex_check`].
 */
typedef enum UnexProperty {
  UNEX_PROPERTY_COMBINATORIAL = 0,
  UNEX_PROPERTY_UNIQUE_NEIGHBOR = 1,
  UNEX_PROPERTY_UNIQUE_NEIGHBOR_FRACTION = 2,
} UnexProperty;

/**
 * Result of every fallible call.
 */
typedef enum UnexStatus {
  UNEX_STATUS_OK = 0,
  /**
   * Null pointer or non-UTF-8 string argument.
   */
  UNEX_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  UNEX_STATUS_INVALID_PARAMETER = 2,
  UNEX_STATUS_PRECONDITION = 3,
  UNEX_STATUS_OUT_OF_RANGE = 4,
  UNEX_STATUS_SIDE_MISMATCH = 5,
  UNEX_STATUS_LOOPS_PRESENT = 6,
  UNEX_STATUS_DISCONNECTED = 7,
  UNEX_STATUS_NOT_CONVERGED = 8,
  UNEX_STATUS_GUARD_EXCEEDED = 9,
  UNEX_STATUS_SEARCH_EXHAUSTED = 10,
  UNEX_STATUS_PARSE = 11,
  UNEX_STATUS_PANIC = 12,
} UnexStatus;

/**
 * Verdict status for [`UnexVerdict`].
 */
typedef enum UnexVerdictStatus {
  UNEX_VERDICT_STATUS_CERTIFIED = 0,
  UNEX_VERDICT_STATUS_TESTED = 1,
  UNEX_VERDICT_STATUS_REFUTED = 2,
} UnexVerdictStatus;

typedef struct UnexBipartiteGraph UnexBipartiteGraph;

typedef struct UnexMatrix UnexMatrix;

typedef struct UnexRegularGraph UnexRegularGraph;

/**
 * Verification budget; pass NULL for the defaults.
 */
typedef struct UnexBudget {
  uint64_t max_enumerated;
  uint64_t samples_per_class;
  /**
   * Sample every size class above this; 0 means no limit.
   */
  size_t exhaustive_max_size;
} UnexBudget;

/**
 * Summary of an expansion check. The full verdict, including the witness,
 * is available as JSON.
 */
typedef struct UnexVerdict {
  enum UnexVerdictStatus status;
  size_t max_eligible_size;
  uint64_t enumerated;
  uint64_t sampled;
  /**
   * Size of the witness subset; 0 unless refuted.
   */
  size_t witness_size;
  size_t witness_count;
  size_t witness_required;
} UnexVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread ("" after success).
 */
const char *unex_last_error(void);

/**
 * Library version as a static string.
 */
const char *unex_version(void);

void unex_string_free(char *s);

enum UnexStatus unex_regular_gabber_galil(size_t m, struct UnexRegularGraph **result);

/**
 * Circulant graph on `Z_n`; the connection set is closed under negation.
 */
enum UnexStatus unex_regular_circulant(size_t n,
                                       const size_t *conn,
                                       size_t conn_len,
                                       struct UnexRegularGraph **result);

enum UnexStatus unex_regular_complete(size_t n, struct UnexRegularGraph **result);

enum UnexStatus unex_regular_petersen(struct UnexRegularGraph **result);

enum UnexStatus unex_regular_from_text(const char *s, struct UnexRegularGraph **result);

enum UnexStatus unex_regular_to_text(const struct UnexRegularGraph *g, char **result);

/**
 * Vertex count, or 0 for a null handle.
 */
size_t unex_regular_vertices(const struct UnexRegularGraph *g);

enum UnexStatus unex_regular_power(const struct UnexRegularGraph *g,
                                   uint32_t k,
                                   struct UnexRegularGraph **result);

/**
 * Exact second eigenvalue. `mixing_lambda` (nullable) receives the bound
 * valid in the mixing lemma, which is `d` for bipartite graphs.
 */
enum UnexStatus unex_regular_lambda(const struct UnexRegularGraph *g,
                                    double *lambda,
                                    double *mixing_lambda);

/**
 * Edge-vertex incidence graph; loops are removed first when `strip_loops`.
 */
enum UnexStatus unex_regular_incidence(const struct UnexRegularGraph *g,
                                       bool strip_loops,
                                       struct UnexBipartiteGraph **result);

void unex_regular_free(struct UnexRegularGraph *g);

/**
 * Bipartite graph from an edge list given as `edge_count` pairs
 * `(left, right)` flattened into `edges`.
 */
enum UnexStatus unex_bipartite_new(size_t n_left,
                                   size_t n_right,
                                   const size_t *edges,
                                   size_t edge_count,
                                   struct UnexBipartiteGraph **result);

enum UnexStatus unex_bipartite_from_text(const char *s, struct UnexBipartiteGraph **result);

enum UnexStatus unex_bipartite_to_text(const struct UnexBipartiteGraph *g, char **result);

/**
 * Left vertex count, or 0 for a null handle.
 */
size_t unex_bipartite_n_left(const struct UnexBipartiteGraph *g);

/**
 * Right vertex count, or 0 for a null handle.
 */
size_t unex_bipartite_n_right(const struct UnexBipartiteGraph *g);

/**
 * Common left degree, or 0 when the graph is not left-regular.
 */
size_t unex_bipartite_left_degree(const struct UnexBipartiteGraph *g);

/**
 * Routed product `outer ∘ inner`. With `deficient`, outer right degrees may
 * be smaller than the inner left size.
 */
enum UnexStatus unex_bipartite_product(const struct UnexBipartiteGraph *outer,
                                       const struct UnexBipartiteGraph *inner,
                                       bool deficient,
                                       struct UnexBipartiteGraph **result);

void unex_bipartite_free(struct UnexBipartiteGraph *g);

/**
 * Checks an expansion property. `alpha` is ignored for
 * `UnexProperty_UniqueNeighbor`. `json` (nullable) receives the full verdict.
 */
enum UnexStatus unex_check(const struct UnexBipartiteGraph *g,
                           enum UnexProperty property,
                           double delta,
                           double alpha,
                           const struct UnexBudget *budget,
                           uint64_t seed,
                           size_t n_workers,
                           struct UnexVerdict *result,
                           char **json);

/**
 * Random search for an exhaustively certified inner graph. Pass NaN for
 * `alpha` to ask for plain unique-neighbor expansion.
 */
enum UnexStatus unex_inner_search(size_t n_left,
                                  size_t degree,
                                  size_t n_right,
                                  double delta,
                                  double alpha,
                                  bool combinatorial,
                                  uint64_t seed,
                                  size_t max_attempts,
                                  size_t n_workers,
                                  struct UnexBipartiteGraph **result);

/**
 * Runs the spectral pipeline from a TOML configuration. `dossier` (nullable)
 * receives the dossier as JSON; `any_refuted` (nullable) reports whether any
 * claim was refuted.
 */
enum UnexStatus unex_pipeline_spectral(const char *config_toml,
                                       size_t n_workers,
                                       struct UnexBipartiteGraph **product,
                                       char **dossier,
                                       bool *any_refuted);

/**
 * Runs the combinatorial pipeline on a given outer graph.
 */
enum UnexStatus unex_pipeline_comb(const struct UnexBipartiteGraph *outer,
                                   const char *config_toml,
                                   size_t n_workers,
                                   struct UnexBipartiteGraph **product,
                                   char **dossier,
                                   bool *any_refuted);

/**
 * Parity-check matrix with one row per right vertex.
 */
enum UnexStatus unex_matrix_ss1(const struct UnexBipartiteGraph *g, struct UnexMatrix **result);

/**
 * Local-code construction: every right vertex applies the rows of `local`
 * to its ordered slots.
 */
enum UnexStatus unex_matrix_ss2(const struct UnexBipartiteGraph *g,
                                const struct UnexMatrix *local,
                                struct UnexMatrix **result);

enum UnexStatus unex_matrix_from_alist(const char *s, struct UnexMatrix **result);

enum UnexStatus unex_matrix_to_alist(const struct UnexMatrix *h, char **result);

/**
 * Row count, or 0 for a null handle.
 */
size_t unex_matrix_rows(const struct UnexMatrix *h);

/**
 * Column count, or 0 for a null handle.
 */
size_t unex_matrix_cols(const struct UnexMatrix *h);

enum UnexStatus unex_matrix_get(const struct UnexMatrix *h, size_t row, size_t col, bool *value);

enum UnexStatus unex_matrix_rank(const struct UnexMatrix *h, size_t *rank);

/**
 * Exhaustive minimum distance; -1 when the code is `{0}`.
 */
enum UnexStatus unex_matrix_distance(const struct UnexMatrix *h,
                                     size_t dim_guard,
                                     size_t n_workers,
                                     int64_t *distance);

void unex_matrix_free(struct UnexMatrix *h);

/**
 * Distance lower bound of the parity code of `g` from a unique-neighbor
 * check at `delta`. Fails with `UNEX_STATUS_PRECONDITION` unless the check
 * certifies.
 */
enum UnexStatus unex_distance_lower_bound(const struct UnexBipartiteGraph *g,
                                          double delta,
                                          const struct UnexBudget *budget,
                                          uint64_t seed,
                                          size_t n_workers,
                                          size_t *bound);

/**
 * Whether the parity code of `outer ∘ inner` equals the local-code
 * construction on `outer` with the parity code of `inner`.
 */
enum UnexStatus unex_routed_equivalence(const struct UnexBipartiteGraph *outer,
                                        const struct UnexBipartiteGraph *inner,
                                        bool *equal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNEX_H */
