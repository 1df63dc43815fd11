#ifndef SPRIMARY_H
#define SPRIMARY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_ARGUMENT = 1,
  SP_STATUS_INVALID_ARGUMENT = 2,
  SP_STATUS_CAP_EXCEEDED = 3,
  /**
   * `(N : M)` meets `S`.
   */
  SP_STATUS_NOT_DISJOINT = 4,
  SP_STATUS_NOT_PROPER = 5,
  SP_STATUS_UNKNOWN_CLAIM = 6,
  SP_STATUS_LATTICE_TOO_LARGE = 7,
  SP_STATUS_INTERNAL = 8,
} SpStatus;

typedef enum SpPredicateKind {
  SP_PREDICATE_KIND_PRIME = 0,
  SP_PREDICATE_KIND_PRIMARY = 1,
  SP_PREDICATE_KIND_WEAKLY_PRIMARY = 2,
  SP_PREDICATE_KIND_S_PRIME = 3,
  SP_PREDICATE_KIND_WEAKLY_S_PRIME = 4,
  SP_PREDICATE_KIND_S_PRIMARY = 5,
  SP_PREDICATE_KIND_WEAKLY_S_PRIMARY = 6,
} SpPredicateKind;

typedef struct SpModule SpModule;

typedef struct SpMultSet SpMultSet;

typedef struct SpRing SpRing;

typedef struct SpSubmodule SpSubmodule;

/**
 * Outcome of `sp_check`. `witness` is meaningful when `has_witness`, and
 * the pair `(a, m)` when `has_counterexample`.
 */
typedef struct SpVerdict {
  bool holds;
  bool has_witness;
  size_t witness;
  bool has_counterexample;
  size_t a;
  size_t m;
} SpVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; never free it.
 */
const char *sp_last_error_message(void);

/**
 * `Z_n` for `2 <= n <= 96`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SpStatus sp_ring_zn(size_t n, struct SpRing **out);

/**
 * # Safety
 * `ring` must come from `sp_ring_zn` and not be freed twice.
 */
void sp_ring_free(struct SpRing *ring);

/**
 * # Safety
 * `ring` must be a live handle or null (giving 0).
 */
size_t sp_ring_order(const struct SpRing *ring);

/**
 * The ring as a module over itself.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_module_regular(const struct SpRing *ring, struct SpModule **out);

/**
 * `Z_m` over the ring `Z_n`, for `m` dividing `n`.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_module_reduction(const struct SpRing *ring, size_t m, struct SpModule **out);

/**
 * Direct sum of `len` modules over one ring.
 *
 * # Safety
 * `parts` must point to `len` live module handles and `out` be valid.
 */
enum SpStatus sp_module_direct_sum(const struct SpModule *const *parts,
                                   size_t len,
                                   struct SpModule **out);

/**
 * # Safety
 * `module` must come from a module constructor and not be freed twice.
 */
void sp_module_free(struct SpModule *module);

/**
 * # Safety
 * `module` must be a live handle or null (giving 0).
 */
size_t sp_module_order(const struct SpModule *module);

/**
 * Number of submodules of `module`.
 *
 * # Safety
 * `module` must be a live handle and `count` a valid pointer.
 */
enum SpStatus sp_module_enumerate(const struct SpModule *module, size_t *count);

/**
 * Submodule generated by the `len` element indices in `gens`.
 *
 * # Safety
 * `module` must be a live handle, `gens` must hold `len` indices (it may
 * be null when `len` is 0) and `out` must be valid.
 */
enum SpStatus sp_submodule_span(const struct SpModule *module,
                                const size_t *gens,
                                size_t len,
                                struct SpSubmodule **out);

/**
 * # Safety
 * `sub` must come from `sp_submodule_span` and not be freed twice.
 */
void sp_submodule_free(struct SpSubmodule *sub);

/**
 * # Safety
 * `sub` must be a live handle or null (giving 0).
 */
size_t sp_submodule_size(const struct SpSubmodule *sub);

/**
 * Multiplicative closure of the `len` ring elements in `gens`.
 *
 * # Safety
 * `ring` must be a live handle, `gens` must hold `len` indices and `out`
 * must be valid.
 */
enum SpStatus sp_multset_closure(const struct SpRing *ring,
                                 const size_t *gens,
                                 size_t len,
                                 struct SpMultSet **out);

/**
 * # Safety
 * `set` must come from `sp_multset_closure` and not be freed twice.
 */
void sp_multset_free(struct SpMultSet *set);

/**
 * # Safety
 * `set` must be a live handle or null (giving 0).
 */
size_t sp_multset_size(const struct SpMultSet *set);

/**
 * Decides `kind` for `sub` in `module`. `set` may be null for kinds that
 * do not use a multiplicative set. Returns `NotDisjoint` or `NotProper`
 * when the kind's precondition fails.
 *
 * # Safety
 * Handles must be live (or `set` null) and `out` valid.
 */
enum SpStatus sp_check(const struct SpModule *module,
                       const struct SpSubmodule *sub,
                       enum SpPredicateKind kind,
                       const struct SpMultSet *set,
                       struct SpVerdict *out);

/**
 * Runs the claim harness on the default corpus and returns the JSON
 * report in `json_out` (free it with `sp_string_free`). `claims` is a
 * comma-separated id list, or null or "all" for every claim.
 * `max_ring_order` of 0 keeps the default bound. `all_pass` receives
 * whether no claim failed.
 *
 * # Safety
 * `claims` must be null or a NUL-terminated string; the out pointers must
 * be valid.
 */
enum SpStatus sp_verify(const char *claims, size_t max_ring_order, char **json_out, bool *all_pass);

/**
 * # Safety
 * `s` must come from this library (e.g. `sp_verify`) or be null.
 */
void sp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPRIMARY_H */
