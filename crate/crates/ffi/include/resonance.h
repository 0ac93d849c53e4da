#ifndef RESONANCE_H
#define RESONANCE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_POINTER = 1,
  RL_STATUS_INVALID_UTF8 = 2,
  RL_STATUS_PARSE = 3,
  RL_STATUS_DIMENSION = 4,
  RL_STATUS_ZERO_INPUT = 5,
  RL_STATUS_PRECONDITION = 6,
  RL_STATUS_TOLERANCE = 7,
  RL_STATUS_INTERNAL = 8,
} RlStatus;

// Opaque pair `(V, K)`.
typedef struct RlPair RlPair;

// Opaque solve report: the JSON text plus a few fields for direct access.
typedef struct RlReport RlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// Owned by the library and valid until the next call on this thread.
const char *rl_last_error(void);

// Library version, a static string.
const char *rl_version(void);

// Parses a pair from JSON: `{"n": .., "field": "rational"|"complex", "K": [[..], ..]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum RlStatus rl_pair_from_json(const char *json, struct RlPair **out);

// Random rational pair with `dim K = dim_k`, reproducible from `seed`.
//
// # Safety
// `out` must be a valid pointer.
enum RlStatus rl_pair_random(size_t n, size_t dim_k, uint64_t seed, struct RlPair **out);

// # Safety
// `pair` must come from this library and not be used afterwards. Null is
// ignored.
void rl_pair_free(struct RlPair *pair);

// Writes `n`, `dim K` and `dim K⊥` of the pair. Any output may be null.
//
// # Safety
// `pair` must be a live handle.
enum RlStatus rl_pair_dims(const struct RlPair *pair, size_t *n, size_t *dim_k, size_t *dim_kperp);

// Resonance membership of a point given as a JSON array in the pair's
// scalar encoding. `rank_tol` is used for complex pairs only.
//
// # Safety
// `pair` must be a live handle, `point_json` NUL-terminated, `resonant`
// valid; `rank` may be null.
enum RlStatus rl_is_resonant(const struct RlPair *pair,
                             const char *point_json,
                             double rank_tol,
                             bool *resonant,
                             size_t *rank);

// Solves `Gr₂(V∨) ∩ ℙK⊥` with default tolerances. Fails with
// `Precondition` unless the section is expected to be finite.
//
// # Safety
// `pair` must be a live handle and `out` a valid pointer.
enum RlStatus rl_solve(const struct RlPair *pair, uint64_t seed, struct RlReport **out);

// JSON text of the report, owned by the handle.
//
// # Safety
// `report` must be a live handle; null returns null.
const char *rl_report_json(const struct RlReport *report);

// Points found, the expected count, and whether every point is simple and
// transversal with nothing missing. Any output may be null.
//
// # Safety
// `report` must be a live handle.
enum RlStatus rl_report_summary(const struct RlReport *report,
                                size_t *points,
                                uint64_t *expected,
                                bool *transversal);

// # Safety
// `report` must come from this library and not be used afterwards. Null is
// ignored.
void rl_report_free(struct RlReport *report);

// Rank test against gcd test on `count` sections of `O(a) ⊕ O(b)`; writes
// the number of agreements.
//
// # Safety
// `agreements` must be a valid pointer.
enum RlStatus rl_p1_cross_check(size_t a,
                                size_t b,
                                size_t count,
                                uint64_t seed,
                                size_t *agreements);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESONANCE_H */
