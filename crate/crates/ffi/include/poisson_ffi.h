#ifndef POISSON_FFI_H
#define POISSON_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Nonzero values other than `InvalidArgument` match the exit
 * codes of the `poisson` command-line tool.
 */
typedef enum PoissonStatus {
  POISSON_STATUS_OK = 0,
  /**
   * Null pointer, invalid UTF-8 or an out-of-range argument.
   */
  POISSON_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed JSON or a malformed field.
   */
  POISSON_STATUS_PARSE_ERROR = 2,
  /**
   * A mathematical precondition failed: Jacobi identity, `[pi, pi] = 0`,
   * or the point is not a fixed point.
   */
  POISSON_STATUS_PRECONDITION = 3,
  POISSON_STATUS_INTERNAL = 4,
} PoissonStatus;

/**
 * A Lie algebra with validated structure constants.
 */
typedef struct PoissonLieAlgebra PoissonLieAlgebra;

/**
 * A certified Poisson bivector on `R^n` with polynomial coefficients.
 */
typedef struct PoissonStructure PoissonStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * successful call. The pointer stays valid until the next call.
 */
const char *poisson_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *poisson_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void poisson_string_free(char *s);

/**
 * Parses a Lie algebra file. Fails with `Precondition` if the Jacobi
 * identity does not hold.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PoissonStatus poisson_lie_algebra_from_json(const char *json, struct PoissonLieAlgebra **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void poisson_lie_algebra_free(struct PoissonLieAlgebra *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_lie_algebra_dim(const struct PoissonLieAlgebra *g, size_t *out);

/**
 * Nondegeneracy of the Killing form.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_lie_algebra_is_semisimple(const struct PoissonLieAlgebra *g, bool *out);

/**
 * `dim H^k` of the Chevalley-Eilenberg complex with trivial coefficients;
 * zero for `k` above the dimension.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_lie_algebra_cohomology_dim(const struct PoissonLieAlgebra *g,
                                                      size_t k,
                                                      size_t *out);

/**
 * Canonical JSON of the algebra, in the Lie algebra file format.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_lie_algebra_to_json(const struct PoissonLieAlgebra *g, char **out);

/**
 * Parses a bivector file, or a Lie algebra file for its linear structure,
 * and certifies `[pi, pi] = 0`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PoissonStatus poisson_structure_from_json(const char *json, struct PoissonStructure **out);

/**
 * The linear Poisson structure on the dual of `g`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_structure_from_lie_algebra(const struct PoissonLieAlgebra *g,
                                                      struct PoissonStructure **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed. Null is ignored.
 */
void poisson_structure_free(struct PoissonStructure *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_structure_dim(const struct PoissonStructure *p, size_t *out);

/**
 * Canonical JSON of the bivector, in the bivector file format.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PoissonStatus poisson_structure_to_json(const struct PoissonStructure *p, char **out);

/**
 * Isotropy algebra at `point`, a string such as `"0,1/2,-1"`; null means
 * the origin.
 *
 * # Safety
 * `p` must be a live handle, `point` null or NUL-terminated, `out` writable.
 */
enum PoissonStatus poisson_structure_isotropy(const struct PoissonStructure *p,
                                              const char *point,
                                              struct PoissonLieAlgebra **out);

/**
 * Stability verdict at `point` (null means the origin) as a JSON object
 * with keys `verdict`, `h2_dim`, `semisimple`, `isotropy` and `witness`.
 *
 * # Safety
 * `p` must be a live handle, `point` null or NUL-terminated, `out` writable.
 */
enum PoissonStatus poisson_structure_classify_json(const struct PoissonStructure *p,
                                                   const char *point,
                                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_FFI_H */
