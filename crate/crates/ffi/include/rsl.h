#ifndef RSL_H
#define RSL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RslStatus {
  RSL_STATUS_OK = 0,
  RSL_STATUS_NULL_POINTER = 1,
  RSL_STATUS_INVALID_SHAPE = 2,
  RSL_STATUS_INVALID_RANK_SET = 3,
  RSL_STATUS_INVALID_INSERTIONS = 4,
  RSL_STATUS_DOMAIN = 5,
  RSL_STATUS_BUFFER_TOO_SMALL = 6,
  RSL_STATUS_INTERNAL = 7,
} RslStatus;

// Opaque flag table.
typedef struct RslTable RslTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *rsl_version(void);

// Message for the last failed call on this thread. Valid until the next call
// that fails.
const char *rsl_last_error(void);

// `b_S(n)` for `S` given as Π_n ranks.
//
// # Safety
// `ranks` must point to `len` readable values (or be null with `len == 0`).
enum RslStatus rsl_b(uintptr_t n, const uintptr_t *ranks, uintptr_t len, int64_t *value);

// `b'_S(n)` for `S` given as Π_n ranks.
//
// # Safety
// As for [`rsl_b`].
enum RslStatus rsl_b_prime(uintptr_t n, const uintptr_t *ranks, uintptr_t len, int64_t *value);

// Builds the flag table of the shape `parts`. Free with [`rsl_table_free`].
//
// # Safety
// `parts` must point to `len` readable values.
enum RslStatus rsl_table_new(const uintptr_t *parts, uintptr_t len, struct RslTable **table);

// # Safety
// `table` must come from [`rsl_table_new`] and not be used afterwards.
void rsl_table_free(struct RslTable *table);

// `n` of the table, or 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle.
uintptr_t rsl_table_n(const struct RslTable *table);

// Flag f-number for Π_n ranks `S`.
//
// # Safety
// `table` must be a live handle; `ranks` as for [`rsl_b`].
enum RslStatus rsl_table_f(const struct RslTable *table,
                           const uintptr_t *ranks,
                           uintptr_t len,
                           uint64_t *value);

// Flag h-number for Π_n ranks `S`.
//
// # Safety
// As for [`rsl_table_f`].
enum RslStatus rsl_table_h(const struct RslTable *table,
                           const uintptr_t *ranks,
                           uintptr_t len,
                           int64_t *value);

// Topological descents (dual ranks) of the facet of `Δ(Π_n)/S_n` given by
// its bar insertion positions, under the length-lex order. Writes at most
// `cap` ranks to `descents` and the true count to `count`.
//
// # Safety
// `gaps` must point to `len` readable values; `descents` to `cap` writable ones.
enum RslStatus rsl_descent_set(const uintptr_t *gaps,
                               uintptr_t len,
                               uintptr_t *descents,
                               uintptr_t cap,
                               uintptr_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSL_H */
