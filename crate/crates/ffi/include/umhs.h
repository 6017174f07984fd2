#ifndef UMHS_H
#define UMHS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum UmhsStatus {
  UMHS_STATUS_OK = 0,
  UMHS_STATUS_NULL_POINTER = 1,
  UMHS_STATUS_INVALID_ARGUMENT = 2,
  UMHS_STATUS_INVALID_HYPERGRAPH = 3,
  UMHS_STATUS_IO = 4,
  UMHS_STATUS_ORACLE = 5,
  UMHS_STATUS_BUFFER_TOO_SMALL = 6,
  UMHS_STATUS_PANIC = 7,
} UmhsStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct UmhsHypergraph UmhsHypergraph;

/**
 * Opaque handle to the result of a recovery run.
 */
typedef struct UmhsRecovery UmhsRecovery;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a hypergraph on nodes `0..node_count` from edges in compressed
 * form: edge `i` consists of `members[offsets[i] .. offsets[i + 1]]`.
 * `offsets` has `edge_count + 1` entries.
 *
 * # Safety
 * `members` must be valid for `offsets[edge_count]` reads, `offsets` for
 * `edge_count + 1` reads and `out` for one write.
 */
enum UmhsStatus umhs_hypergraph_from_edges(size_t node_count,
                                           const size_t *members,
                                           const size_t *offsets,
                                           size_t edge_count,
                                           struct UmhsHypergraph **out);

/**
 * Reads a hyperedge-list file. Node indices follow first appearance of
 * each token; [`umhs_hypergraph_label`] maps them back.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for one write.
 */
enum UmhsStatus umhs_hypergraph_read(const char *path, struct UmhsHypergraph **out);

/**
 * Releases a hypergraph. Null is ignored.
 *
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void umhs_hypergraph_free(struct UmhsHypergraph *h);

/**
 * Number of nodes; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t umhs_hypergraph_node_count(const struct UmhsHypergraph *h);

/**
 * Number of distinct edges; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t umhs_hypergraph_edge_count(const struct UmhsHypergraph *h);

/**
 * The file token of node `v`, or null when out of range. The string lives
 * as long as the handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
const char *umhs_hypergraph_label(const struct UmhsHypergraph *h, size_t v);

/**
 * Whether `nodes` hits every edge.
 *
 * # Safety
 * `h` must be a live handle, `nodes` valid for `len` reads and `out` for
 * one write.
 */
enum UmhsStatus umhs_hypergraph_is_hitting_set(const struct UmhsHypergraph *h,
                                               const size_t *nodes,
                                               size_t len,
                                               bool *out);

/**
 * Size of a minimum hitting set, by the exact oracle with default limits.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for one write.
 */
enum UmhsStatus umhs_min_hitting_set_size(const struct UmhsHypergraph *h, size_t *out);

/**
 * Runs UMHS for `iterations` rounds (at least one) under `seed`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for one write.
 */
enum UmhsStatus umhs_recover(const struct UmhsHypergraph *h,
                             size_t iterations,
                             uint64_t seed,
                             struct UmhsRecovery **out);

/**
 * Releases a recovery result. Null is ignored.
 *
 * # Safety
 * `r` must be null or a handle from this library not yet freed.
 */
void umhs_recovery_free(struct UmhsRecovery *r);

/**
 * Number of recovered nodes; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
size_t umhs_recovery_union_size(const struct UmhsRecovery *r);

/**
 * Copies the recovered nodes, ascending, into `out`. `written` receives the
 * full count even when the buffer is too small.
 *
 * # Safety
 * `r` must be a live handle, `out` valid for `capacity` writes and
 * `written` for one write.
 */
enum UmhsStatus umhs_recovery_union(const struct UmhsRecovery *r,
                                    size_t *out,
                                    size_t capacity,
                                    size_t *written);

/**
 * Copies the node ranking (recovered nodes first, each block by degree)
 * into `out`. Its length is the node count.
 *
 * # Safety
 * As for [`umhs_recovery_union`].
 */
enum UmhsStatus umhs_recovery_ranking(const struct UmhsRecovery *r,
                                      size_t *out,
                                      size_t capacity,
                                      size_t *written);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *umhs_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *umhs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UMHS_H */
