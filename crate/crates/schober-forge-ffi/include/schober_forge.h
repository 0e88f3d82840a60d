#ifndef SCHOBER_FORGE_H
#define SCHOBER_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  SF_STATUS_NULL_ARGUMENT = 1,
  /*
   Malformed input: bad type tag, bad JSON, invalid UTF-8.
   */
  SF_STATUS_PARSE = 2,
  /*
   Input outside the domain of the operation.
   */
  SF_STATUS_DOMAIN = 3,
  /*
   Operation not available for this input, or rank cap exceeded.
   */
  SF_STATUS_UNSUPPORTED = 4,
  /*
   Structural failure inside the library.
   */
  SF_STATUS_INTERNAL = 5,
  /*
   A verification ran and failed.
   */
  SF_STATUS_VERIFICATION_FAILED = 6,
} SfStatus;

/*
 Opaque ice quiver with potential.
 */
typedef struct SfQp SfQp;

typedef struct SfQpCounts {
  size_t vertices;
  size_t arrows;
  size_t frozen_vertices;
  size_t frozen_arrows;
  size_t potential_terms;
} SfQpCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. Owned by the library.
 */
const char *sf_last_error(void);

/*
 Library version as a static string.
 */
const char *sf_version(void);

/*
 Basic triangle QP of the Dynkin type `ty` (e.g. "A3"); `grid` selects the
 grid construction, available in type A.

 # Safety
 `ty` must be a valid C string and `out` a valid pointer.
 */
enum SfStatus sf_triangle_qp(const char *ty, bool grid, struct SfQp **out);

/*
 Glued QP of the fan triangulation of an `n`-gon.

 # Safety
 `ty` must be a valid C string and `out` a valid pointer.
 */
enum SfStatus sf_surface_polygon(size_t n, const char *ty, struct SfQp **out);

/*
 Parses an ice QP from `len` bytes of JSON.

 # Safety
 `data` must point to `len` readable bytes and `out` must be valid.
 */
enum SfStatus sf_qp_import_json(const uint8_t *data, size_t len, struct SfQp **out);

/*
 Canonical JSON of `qp` as a new string.

 # Safety
 `qp` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_qp_export_json(const struct SfQp *qp, char **out);

/*
 DOT rendering of `qp` as a new string.

 # Safety
 `qp` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_qp_export_dot(const struct SfQp *qp, char **out);

/*
 # Safety
 `qp` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_qp_counts(const struct SfQp *qp, struct SfQpCounts *out);

/*
 Builds the Ginzburg presentation of `qp` and checks `d² = 0`; returns
 `SF_STATUS_VERIFICATION_FAILED` if it does not hold.

 # Safety
 `qp` must be a live handle.
 */
enum SfStatus sf_ginzburg_check(const struct SfQp *qp);

/*
 Writes whether `a` and `b` are isomorphic ice QPs. With
 `allow_dual_rescale`, dual arrows may be negated.

 # Safety
 `a`, `b` must be live handles and `out` a valid pointer.
 */
enum SfStatus sf_qp_isomorphic(const struct SfQp *a,
                               const struct SfQp *b,
                               bool compare_potential,
                               bool allow_dual_rescale,
                               bool *out);

/*
 Suspension of the indecomposable `label` in the 1-cluster category.

 # Safety
 `ty` must be a valid C string and `out` a valid pointer.
 */
enum SfStatus sf_cluster_shift(const char *ty, size_t label, size_t *out);

/*
 Cofiber of the minimal morphism `i → j` in type `A_n`.

 # Safety
 `out` must be a valid pointer.
 */
enum SfStatus sf_cluster_cofiber(size_t n, size_t i, size_t j, size_t *out);

/*
 Fiber of the minimal morphism `i → j` in type `A_n`.

 # Safety
 `out` must be a valid pointer.
 */
enum SfStatus sf_cluster_fiber(size_t n, size_t i, size_t j, size_t *out);

/*
 Runs a verification suite (`"all"` or a suite name) and writes the number
 of failing checks to `failures`. A nonzero count also yields
 `SF_STATUS_VERIFICATION_FAILED`, with the failure records as the last error.

 # Safety
 `suite` must be a valid C string; `failures` may be null.
 */
enum SfStatus sf_verify(const char *suite, bool long_, size_t *failures);

/*
 Releases a handle; null is ignored.

 # Safety
 `qp` must be null or a handle not yet freed.
 */
void sf_qp_free(struct SfQp *qp);

/*
 Releases a string returned by the library; null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void sf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHOBER_FORGE_H */
