#ifndef NMBIN_H
#define NMBIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NmbinStatus {
  NMBIN_STATUS_OK = 0,
  NMBIN_STATUS_NULL_POINTER = 1,
  NMBIN_STATUS_INVALID_PARAMS = 2,
  NMBIN_STATUS_RESOURCE = 3,
  NMBIN_STATUS_DOMAIN = 4,
  NMBIN_STATUS_PARSE = 5,
  NMBIN_STATUS_BUFFER_TOO_SMALL = 6,
  NMBIN_STATUS_PANIC = 7,
} NmbinStatus;

// Opaque handle to a table of `p_{k,c}`.
typedef struct NmbinCountTable NmbinCountTable;

// Opaque sequence handle; caches terms as they are requested.
typedef struct NmbinSequence NmbinSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread; do not free it.
const char *nmbin_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void nmbin_string_free(char *s);

enum NmbinStatus nmbin_sequence_new(uint64_t n, uint64_t m, struct NmbinSequence **out);

// # Safety
// `seq` must be null or a handle from [`nmbin_sequence_new`] not yet freed.
void nmbin_sequence_free(struct NmbinSequence *seq);

// `a_x` as a decimal string, to be released with [`nmbin_string_free`].
enum NmbinStatus nmbin_sequence_term(struct NmbinSequence *seq, uint64_t x, char **out);

// `a_x` when it fits in 64 bits, `NMBIN_STATUS_DOMAIN` otherwise.
enum NmbinStatus nmbin_sequence_term_u64(struct NmbinSequence *seq, uint64_t x, uint64_t *out);

// Decomposes the decimal string `z`, writing summand indices (largest first)
// into `indices`. `len` always receives the number of summands; if it
// exceeds `capacity` nothing is written and `NMBIN_STATUS_BUFFER_TOO_SMALL`
// is returned. `indices` may be null when `capacity` is zero.
//
// # Safety
// `z` must be a NUL-terminated string and `indices` must have room for
// `capacity` values.
enum NmbinStatus nmbin_decompose(struct NmbinSequence *seq,
                                 const char *z,
                                 uint64_t *indices,
                                 size_t capacity,
                                 size_t *len);

enum NmbinStatus nmbin_count_table_new(uint64_t n,
                                       uint64_t m,
                                       uint64_t k_max,
                                       struct NmbinCountTable **out);

// # Safety
// `table` must be null or a handle from [`nmbin_count_table_new`] not yet freed.
void nmbin_count_table_free(struct NmbinCountTable *table);

// `p_{k,c}` as a decimal string; zero outside the table's triangle.
enum NmbinStatus nmbin_count_table_get(const struct NmbinCountTable *table,
                                       uint64_t k,
                                       uint64_t c,
                                       char **out);

// `beta`, `C` and `C'` rounded to doubles.
enum NmbinStatus nmbin_constants(uint64_t n, uint64_t m, double *beta, double *c, double *c_prime);

// JSON record of the constants to `digits` significant digits, with
// predicted mean and variance at `k` when `k > 0`.
enum NmbinStatus nmbin_constants_json(uint64_t n,
                                      uint64_t m,
                                      uint64_t k,
                                      uint32_t digits,
                                      char **out);

// Exact mean and variance of the summand count over `[0, a_{sk})`.
enum NmbinStatus nmbin_exact_stats(uint64_t n,
                                   uint64_t m,
                                   uint64_t k,
                                   double *mean,
                                   double *variance);

// Smallest Eisenstein prime up to `prime_bound` for the monic polynomial
// with coefficients `coeffs[0..len]` (lowest degree first); 0 when none.
//
// # Safety
// `coeffs` must point to `len` readable values.
enum NmbinStatus nmbin_eisenstein_witness(const int64_t *coeffs,
                                          size_t len,
                                          uint64_t prime_bound,
                                          uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NMBIN_H */
