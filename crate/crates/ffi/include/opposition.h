#ifndef OPPOSITION_H
#define OPPOSITION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum OppStatus {
  OPP_STATUS_OK = 0,
  OPP_STATUS_NULL_POINTER = 1,
  OPP_STATUS_INVALID_UTF8 = 2,
  OPP_STATUS_PARSE = 3,
  OPP_STATUS_INVALID_INPUT = 4,
  OPP_STATUS_CAPACITY = 5,
  OPP_STATUS_NOT_STABLE = 6,
  OPP_STATUS_BUFFER_TOO_SMALL = 7,
  OPP_STATUS_INTERNAL = 8,
} OppStatus;

// Kind of automorphism requested from [`opp_automorphism_random`].
typedef enum OppKind {
  OPP_KIND_COLLINEATION = 0,
  OPP_KIND_DUALITY = 1,
} OppKind;

// A collineation or duality of a specific geometry.
typedef struct OppAutomorphism OppAutomorphism;

// A built flag geometry.
typedef struct OppGeometry OppGeometry;

// Summary of one analysis. Type sets are bit masks over node indices
// (bit `i` is node label `i + 1`).
typedef struct OppAnalysis {
  uint64_t opposition_type;
  bool capped;
  bool domestic;
  bool admissible;
  bool duality;
  uint64_t order;
  uint32_t measured_displacement;
  uint32_t formula_displacement;
  uint32_t invariant_violations;
} OppAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to fit) and returns the full message length in bytes.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t opp_last_error(char *buf, size_t len);

// `ℓ(w₀) − ℓ(w_{S∖J})` for a type string such as `E7` and circled labels.
//
// # Safety
// `type_name` must be a valid C string and `circled` must point to `len` labels.
enum OppStatus opp_displacement(const char *type_name,
                                const uint32_t *circled,
                                size_t len,
                                uint32_t *out);

// Admissibility of a diagram. `pi` is empty, a class (`id`, `op2`,
// `tri3`) or explicit cycles such as `(1,6)(3,5)`.
//
// # Safety
// Strings must be valid C strings and `circled` must point to `len` labels.
enum OppStatus opp_is_admissible(const char *type_name,
                                 const uint32_t *circled,
                                 size_t len,
                                 const char *pi,
                                 bool *out);

// Number of admissible diagrams for a type and automorphism.
//
// # Safety
// Strings must be valid C strings.
enum OppStatus opp_count_admissible(const char *type_name, const char *pi, size_t *out);

// Builds a geometry from a spec such as `A3@2` or `B3@2`.
//
// # Safety
// `spec` must be a valid C string; `out` must be writable.
enum OppStatus opp_geometry_build(const char *spec, struct OppGeometry **out);

// # Safety
// `g` must be null or a handle from [`opp_geometry_build`] not yet freed.
void opp_geometry_free(struct OppGeometry *g);

// Rank, vertex count and chamber count.
//
// # Safety
// `g` must be a live handle; outputs must be writable.
enum OppStatus opp_geometry_counts(const struct OppGeometry *g,
                                   size_t *rank,
                                   size_t *vertices,
                                   size_t *chambers);

// Parses the automorphism file format.
//
// # Safety
// `contents` must be a valid C string; `out` must be writable.
enum OppStatus opp_automorphism_parse(const char *contents, struct OppAutomorphism **out);

// A seeded random automorphism of the given kind.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum OppStatus opp_automorphism_random(const struct OppGeometry *g,
                                       uint64_t seed,
                                       enum OppKind kind,
                                       struct OppAutomorphism **out);

// The symplectic polarity of a projective space of even dimension.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum OppStatus opp_automorphism_symplectic_polarity(const struct OppGeometry *g,
                                                    struct OppAutomorphism **out);

// # Safety
// `a` must be null or a live automorphism handle.
void opp_automorphism_free(struct OppAutomorphism *a);

// Full analysis, including the invariant suite.
//
// # Safety
// Handles must be live; `out` must be writable.
enum OppStatus opp_analyze(const struct OppGeometry *g,
                           const struct OppAutomorphism *a,
                           struct OppAnalysis *out);

// Writes the one-line `key=value` analysis record into `buf`. `needed`
// receives the record length including the terminating NUL; when `len` is
// too small nothing is written and `BufferTooSmall` is returned.
//
// # Safety
// Handles must be live; `buf` must point to `len` writable bytes.
enum OppStatus opp_analysis_record(const struct OppGeometry *g,
                                   const struct OppAutomorphism *a,
                                   char *buf,
                                   size_t len,
                                   size_t *needed);

// Whether the automorphism maps no simplex of type `mask` to an opposite.
// `mask` must be stable under the twisted opposition, else `NotStable`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum OppStatus opp_is_j_domestic(const struct OppGeometry *g,
                                 const struct OppAutomorphism *a,
                                 uint64_t mask,
                                 bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPPOSITION_H */
