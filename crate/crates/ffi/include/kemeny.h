#ifndef KEMENY_H
#define KEMENY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KEMENY_ALGORITHM_BRUTE 0

#define KEMENY_ALGORITHM_BRANCH 1

#define KEMENY_ALGORITHM_SUBSET_DP 2

#define KEMENY_ALGORITHM_WINDOW_D 3

#define KEMENY_ALGORITHM_WINDOW_RANGE 4

#define KEMENY_ALGORITHM_PATHWIDTH_DP 5

// All rankings of optimal score.
#define KEMENY_MODE_OPT 0

// Rankings of score at most `budget`.
#define KEMENY_MODE_BUDGET 1

// Rankings within `lambda_numer / lambda_denom` of the optimum.
#define KEMENY_MODE_APPROX 2

typedef enum KemenyStatus {
  KEMENY_STATUS_OK = 0,
  KEMENY_STATUS_NULL_POINTER = 1,
  // Malformed text, or votes that are not permutations of one universe.
  KEMENY_STATUS_INVALID_INPUT = 2,
  // An exponential routine would exceed its size limit.
  KEMENY_STATUS_RESOURCE = 3,
  KEMENY_STATUS_INVALID_ARGUMENT = 4,
  // A Rust panic was caught at the boundary.
  KEMENY_STATUS_INTERNAL = 5,
} KemenyStatus;

// Opaque profile handle.
typedef struct KemenyProfile KemenyProfile;

// Opaque solver result handle.
typedef struct KemenySolution KemenySolution;

// Structural parameters. The average KT distance is the exact fraction
// `avg_kt_numer / avg_kt_denom` in lowest terms.
typedef struct KemenyParameters {
  size_t max_range;
  uint64_t avg_kt_numer;
  uint64_t avg_kt_denom;
  size_t unanimity_width;
  size_t blocking_size;
  size_t consensus_distance;
} KemenyParameters;

typedef struct KemenyMode {
  uint32_t kind;
  uint64_t budget;
  uint64_t lambda_numer;
  uint64_t lambda_denom;
} KemenyMode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the
// same thread.
const char *kemeny_last_error_message(void);

// Builds a profile from `n` rankings of `m` candidates stored row by row.
//
// # Safety
// `votes` must point to `n * m` readable values and `out` must be writable.
enum KemenyStatus kemeny_profile_from_votes(size_t m,
                                            size_t n,
                                            const size_t *votes,
                                            struct KemenyProfile **out_profile);

// Parses a profile in the text file format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum KemenyStatus kemeny_profile_parse(const char *text, struct KemenyProfile **out_profile);

// # Safety
// `profile` must be null or a handle from this library not yet freed.
void kemeny_profile_free(struct KemenyProfile *profile);

// # Safety
// `profile` must be a live handle and the out pointers writable.
enum KemenyStatus kemeny_profile_size(const struct KemenyProfile *profile,
                                      size_t *out_m,
                                      size_t *out_n);

// # Safety
// `profile` must be a live handle and `out_params` writable.
enum KemenyStatus kemeny_profile_parameters(const struct KemenyProfile *profile,
                                            struct KemenyParameters *out_params);

// Kendall-Tau distance between two rankings of `m` candidates.
//
// # Safety
// `a` and `b` must point to `m` readable values and `out_distance` be writable.
enum KemenyStatus kemeny_kt_distance(size_t m,
                                     const size_t *a,
                                     const size_t *b,
                                     uint64_t *out_distance);

// Kemeny score of a ranking against a profile.
//
// # Safety
// `ranking` must point to `m` readable values, where `m` is the profile's
// candidate count.
enum KemenyStatus kemeny_score(const struct KemenyProfile *profile,
                               const size_t *ranking,
                               uint64_t *out_score);

// Returns up to `r` distinct rankings selected by `mode`, sorted by score
// and then lexicographically.
//
// # Safety
// `profile` and `mode` must be valid and `out_solution` writable.
enum KemenyStatus kemeny_solve(const struct KemenyProfile *profile,
                               size_t r,
                               const struct KemenyMode *mode_spec,
                               uint32_t algorithm_code,
                               struct KemenySolution **out_solution);

// # Safety
// `solution` must be null or a handle from this library not yet freed.
void kemeny_solution_free(struct KemenySolution *solution);

// Number of rankings found; may be fewer than requested.
//
// # Safety
// `solution` must be a live handle and `out_len` writable.
enum KemenyStatus kemeny_solution_len(const struct KemenySolution *solution, size_t *out_len);

// Optimal score, when the solver determined it. Writes `has_value = 0`
// otherwise.
//
// # Safety
// `solution` must be a live handle and the out pointers writable.
enum KemenyStatus kemeny_solution_k_opt(const struct KemenySolution *solution,
                                        bool *out_has_value,
                                        uint64_t *out_k_opt);

// # Safety
// `solution` must be a live handle and `out_score` writable.
enum KemenyStatus kemeny_solution_score(const struct KemenySolution *solution,
                                        size_t index,
                                        uint64_t *out_score);

// Copies ranking `index` into `buf`, which must hold at least `m` values.
//
// # Safety
// `solution` must be a live handle and `buf` writable for `buf_len` values.
enum KemenyStatus kemeny_solution_ranking(const struct KemenySolution *solution,
                                          size_t index,
                                          size_t *buf,
                                          size_t buf_len);

// Samples `n` Mallows votes around the identity ranking with dispersion
// `theta > 0`. Deterministic in `seed`.
//
// # Safety
// `out_profile` must be writable.
enum KemenyStatus kemeny_sample_profile(size_t m,
                                        size_t n,
                                        double theta,
                                        uint64_t seed,
                                        struct KemenyProfile **out_profile);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KEMENY_H */
