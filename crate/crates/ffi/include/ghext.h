/* C interface for the generalized Haagerup extension toolkit. */

#ifndef GHEXT_H
#define GHEXT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum GhextStatus {
  GhextOk = 0,
  GhextErrNull = 1,
  GhextErrUtf8 = 2,
  GhextErrIo = 3,
  GhextErrParse = 4,
  GhextErrInvalid = 5,
  GhextErrNoSolution = 6,
  GhextErrInternal = 7,
} GhextStatus;

/**
 * Opaque handle to a category datum (group, sign/root tables, optional
 * tensor).
 */
typedef struct GhextCategory GhextCategory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; never freed.
 */
const char *ghext_version(void);

/**
 * Releases a string produced by this library.
 *
 * # Safety
 * `ptr` must have been returned by this library and not freed before.
 */
void ghext_string_free(char *ptr);

/**
 * Loads a category from a JSON file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GhextStatus ghext_category_from_json_file(const char *path, struct GhextCategory **out);

/**
 * Builds a category from a named ε preset (`z2z2-paper`,
 * `z2n-nontrivial`, `ah4`, `trivial`) for the given group spec; η is
 * trivial and no tensor is attached.
 *
 * # Safety
 * `preset` and `group_spec` must be valid NUL-terminated strings.
 */
enum GhextStatus ghext_category_preset(const char *preset,
                                       const char *group_spec,
                                       struct GhextCategory **out);

/**
 * Releases a category handle.
 *
 * # Safety
 * `ptr` must have been returned by this library and not freed before.
 */
void ghext_category_free(struct GhextCategory *ptr);

/**
 * Runs the axiom verifier; `max_residual` receives the worst floating
 * residual and `pass` is 1/0.  Fails with `GHEXT_ERR_INVALID` when the
 * handle has no tensor.
 *
 * # Safety
 * All pointers must be valid.
 */
enum GhextStatus ghext_verify_axioms(const struct GhextCategory *cat,
                                     double tol,
                                     double *max_residual,
                                     int *pass);

/**
 * Solves the tensor system for the handle's `(group, ε, η)` and stores
 * the best solution inside the handle; `residual` receives its maximal
 * absolute residual.
 *
 * # Safety
 * All pointers must be valid.
 */
enum GhextStatus ghext_solve_tensor(struct GhextCategory *cat,
                                    unsigned int restarts,
                                    uint64_t seed,
                                    double tol,
                                    double *residual);

/**
 * Enumerates extension data for the twist `(p, z)` (comma-separated
 * residues) and writes a JSON document with the solutions and their
 * equivalence-class count to `json_out`.
 *
 * # Safety
 * All pointers must be valid; free the string with `ghext_string_free`.
 */
enum GhextStatus ghext_search_extensions_json(const struct GhextCategory *cat,
                                              const char *p,
                                              const char *z,
                                              char **json_out);

/**
 * Klein-four census: writes the admissible triple count and the total
 * number of extensions.
 *
 * # Safety
 * Out-pointers must be valid.
 */
enum GhextStatus ghext_klein_census(unsigned int *triples, unsigned int *total);

/**
 * Rotation-graded census: writes the total count of quasi-trivial
 * extensions.
 *
 * # Safety
 * `total` must be valid.
 */
enum GhextStatus ghext_a4_census(unsigned int *total);

/**
 * Degenerate-scenario check: `l11_pass` reports the compatibility
 * identity, `data_pass` whether both data sets satisfy the exact system.
 *
 * # Safety
 * Out-pointers must be valid.
 */
enum GhextStatus ghext_ah4_check(int *l11_pass, int *data_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GHEXT_H */
