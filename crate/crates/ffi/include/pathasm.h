#ifndef PATHASM_H
#define PATHASM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PaAlgorithm {
  PA_ALGORITHM_EXHAUSTIVE = 0,
  PA_ALGORITHM_TREE = 1,
  PA_ALGORITHM_SAMPLED = 2,
} PaAlgorithm;

typedef enum PaCodec {
  PA_CODEC_PATHWAY = 0,
  PA_CODEC_LZW = 1,
} PaCodec;

typedef enum PaStatus {
  PA_STATUS_OK = 0,
  PA_STATUS_NULL_POINTER = 1,
  PA_STATUS_INVALID_ARGUMENT = 2,
  PA_STATUS_BUDGET_EXCEEDED = 3,
  PA_STATUS_BOUND_EXCEEDED = 4,
  PA_STATUS_MALFORMED = 5,
  PA_STATUS_UNREACHABLE = 6,
  PA_STATUS_PANIC = 7,
} PaStatus;

/**
 * Bytes owned by the library.
 */
typedef struct PaBuffer PaBuffer;

/**
 * Search settings.
 */
typedef struct PaConfig PaConfig;

/**
 * A coloured graph under construction.
 */
typedef struct PaGraph PaGraph;

/**
 * A finite group.
 */
typedef struct PaGroup PaGroup;

/**
 * An index with its bounds. When a search fails with
 * `PA_STATUS_BOUND_EXCEEDED` or `PA_STATUS_BUDGET_EXCEEDED` the bounds
 * found so far are still written; an unknown upper bound is `SIZE_MAX`.
 */
typedef struct PaIndex {
  size_t index;
  size_t lower_bound;
  size_t upper_bound;
  bool exact;
  /**
   * Steps in the witness pathway.
   */
  size_t witness_steps;
} PaIndex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static NUL-terminated string.
 */
const char *pa_version(void);

/**
 * The calling thread's last error message, or null if none. Do not free.
 */
const char *pa_last_error(void);

struct PaConfig *pa_config_new(void);

/**
 * # Safety
 * `cfg` must come from `pa_config_new` and not be used afterwards.
 */
void pa_config_free(struct PaConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live config handle.
 */
enum PaStatus pa_config_set_algorithm(struct PaConfig *cfg, enum PaAlgorithm algorithm);

/**
 * Searches fail once the index is known to exceed `max_index`.
 *
 * # Safety
 * `cfg` must be a live config handle.
 */
enum PaStatus pa_config_set_max_index(struct PaConfig *cfg, size_t max_index);

/**
 * # Safety
 * `cfg` must be a live config handle.
 */
enum PaStatus pa_config_clear_max_index(struct PaConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live config handle.
 */
enum PaStatus pa_config_set_seed(struct PaConfig *cfg, uint64_t seed);

/**
 * # Safety
 * `cfg` must be a live config handle.
 */
enum PaStatus pa_config_set_budget(struct PaConfig *cfg, uint64_t node_budget);

/**
 * Shortest addition chain length for `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PaStatus pa_chain_length(uint64_t n, uint32_t *out);

uint32_t pa_schonhage_lower_bound(uint64_t n);

/**
 * Assembly index of the positive integer `n` under addition.
 *
 * # Safety
 * `cfg` is null or a live config handle; `out` must be writable.
 */
enum PaStatus pa_number_index(const struct PaConfig *cfg, uint64_t n, struct PaIndex *out);

/**
 * Assembly index of a byte string. With `allow_reversal`, reversed parts
 * may be reused.
 *
 * # Safety
 * `text` points to `len` readable bytes; `cfg` is null or live; `out`
 * must be writable.
 */
enum PaStatus pa_string_index(const struct PaConfig *cfg,
                              const uint8_t *text,
                              size_t len,
                              bool allow_reversal,
                              struct PaIndex *out);

/**
 * A graph with `n` nodes coloured `colours[0..n]` and no edges.
 *
 * # Safety
 * `colours` points to `n` readable values; `out` must be writable.
 */
enum PaStatus pa_graph_new(const uint32_t *colours, size_t n, struct PaGraph **out);

/**
 * # Safety
 * `g` must come from `pa_graph_new` and not be used afterwards.
 */
void pa_graph_free(struct PaGraph *g);

/**
 * Adds the undirected edge `u-v` with an edge label.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
enum PaStatus pa_graph_add_edge(struct PaGraph *g, size_t u, size_t v, uint8_t label);

/**
 * The canonical form's bytes: equal exactly for isomorphic graphs.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum PaStatus pa_graph_canonical(const struct PaGraph *g, struct PaBuffer **out);

/**
 * # Safety
 * `cfg` is null or live; `g` must be a live graph handle; `out` must be
 * writable.
 */
enum PaStatus pa_graph_index(const struct PaConfig *cfg,
                             const struct PaGraph *g,
                             struct PaIndex *out);

/**
 * A group from its `order` x `order` Cayley table in row-major order.
 *
 * # Safety
 * `table` points to `order * order` readable values; `out` must be
 * writable.
 */
enum PaStatus pa_group_from_table(const size_t *table, size_t order, struct PaGroup **out);

/**
 * The integers mod `n` under addition.
 *
 * # Safety
 * `out` must be writable.
 */
enum PaStatus pa_group_cyclic(size_t n, struct PaGroup **out);

/**
 * # Safety
 * `g` must come from a `pa_group_*` constructor and not be used afterwards.
 */
void pa_group_free(struct PaGroup *g);

/**
 * The group's order, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live group handle.
 */
size_t pa_group_order(const struct PaGroup *g);

/**
 * Assembly index of element `x` from the generators `gens[0..n_gens]`.
 *
 * # Safety
 * `cfg` is null or live; `g` must be live; `gens` points to `n_gens`
 * readable values; `out` must be writable.
 */
enum PaStatus pa_group_element_index(const struct PaConfig *cfg,
                                     const struct PaGroup *g,
                                     const size_t *gens,
                                     size_t n_gens,
                                     size_t x,
                                     struct PaIndex *out);

/**
 * Compresses `data` into a file image (magic followed by codes).
 *
 * # Safety
 * `cfg` is null or live; `data` points to `len` readable bytes; `out`
 * must be writable.
 */
enum PaStatus pa_compress(const struct PaConfig *cfg,
                          enum PaCodec codec,
                          const uint8_t *data,
                          size_t len,
                          struct PaBuffer **out);

/**
 * Decompresses a file image from `pa_compress`; the codec is read from
 * the magic.
 *
 * # Safety
 * `data` points to `len` readable bytes; `out` must be writable.
 */
enum PaStatus pa_decompress(const uint8_t *data, size_t len, struct PaBuffer **out);

/**
 * # Safety
 * `b` is null or a live buffer handle. The pointer is valid until the
 * buffer is freed.
 */
const uint8_t *pa_buffer_data(const struct PaBuffer *b);

/**
 * # Safety
 * `b` is null or a live buffer handle.
 */
size_t pa_buffer_len(const struct PaBuffer *b);

/**
 * # Safety
 * `b` must come from this library and not be used afterwards.
 */
void pa_buffer_free(struct PaBuffer *b);

/**
 * Copies the last error message, for callers that prefer owned strings.
 * Returns null if there is none; free with `pa_string_free`.
 */
char *pa_last_error_copy(void);

/**
 * # Safety
 * `s` must come from `pa_last_error_copy` and not be used afterwards.
 */
void pa_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHASM_H */
