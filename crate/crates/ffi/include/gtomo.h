/* C interface to the gtomo quantum-tomography library. */

#ifndef GTOMO_H
#define GTOMO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum GtStatus {
  GtStatus_Ok = 0,
  GtStatus_NullArgument = 1,
  GtStatus_InvalidUtf8 = 2,
  GtStatus_ParseError = 3,
  GtStatus_InvalidInput = 4,
  GtStatus_NumericalError = 5,
} GtStatus;

// Opaque finite group handle.
typedef struct GtGroup GtGroup;

// Opaque registry handle: one group with its irreducible representations.
typedef struct GtRegistry GtRegistry;

// Inverse-problem verdict, mirrored as plain C data.
typedef struct GtVerdict {
  int32_t compatible;
  int32_t hermitian;
  int32_t positive;
  int32_t accepted;
  double compatibility_residual;
  double hermiticity_residual;
  double min_naimark_eigenvalue;
  double tomogram_residual;
} GtVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. Valid until
// the next failing call on the same thread.
const char *gt_last_error_message(void);

// Library version as a static string.
const char *gt_version(void);

// Build a validated group from its JSON document
// `{"name": …, "order": K, "mul_table": [[…]]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum GtStatus gt_group_from_json(const char *json, struct GtGroup **out);

// Order of the group.
//
// # Safety
// `group` must be a live handle from this library.
uint32_t gt_group_order(const struct GtGroup *group);

// Free a group handle; a null pointer is ignored.
//
// # Safety
// `group` must come from this library and not be freed twice.
void gt_group_free(struct GtGroup *group);

// Load one of the built-in registries: "S3" or "Z2".
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum GtStatus gt_registry_builtin(const char *name, struct GtRegistry **out);

// Load a registry from its JSON document `{"group": …, "irreps": […]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum GtStatus gt_registry_from_json(const char *json, struct GtRegistry **out);

// Group order of the registry's group.
//
// # Safety
// `registry` must be a live handle from this library.
uint32_t gt_registry_group_order(const struct GtRegistry *registry);

// Dimension of a labelled irrep, or 0 when the label is unknown.
//
// # Safety
// `registry` must be a live handle, `label` NUL-terminated.
uint32_t gt_registry_irrep_dim(const struct GtRegistry *registry, const char *label);

// Free a registry handle; a null pointer is ignored.
//
// # Safety
// `registry` must come from this library and not be freed twice.
void gt_registry_free(struct GtRegistry *registry);

// Certify positivity of a group function given as K interleaved complex
// values. Writes the K ascending Naimark eigenvalues to `out_eigenvalues`
// and 1/0 to `out_positive`.
//
// # Safety
// `values` must hold 2K doubles, `out_eigenvalues` K doubles.
enum GtStatus gt_naimark_certify(const struct GtGroup *group,
                                 const double *values,
                                 double *out_eigenvalues,
                                 int32_t *out_positive);

// Tomogram of a density state: writes K·n doubles (element-major) to
// `out_vectors`. The state is an n×n interleaved complex matrix.
//
// # Safety
// `state` must hold 2n² doubles; `out_vectors` K·n doubles.
enum GtStatus gt_tomogram(const struct GtRegistry *registry,
                          const char *irrep_label,
                          const double *state,
                          double *out_vectors);

// Reconstruct ρ = (n/K) Σ φ(g)* D(g) from K interleaved complex values of
// a group function. Writes the n×n interleaved matrix and the minimum
// eigenvalue of its Hermitian part.
//
// # Safety
// `phi` must hold 2K doubles and `out_matrix` 2n² doubles.
enum GtStatus gt_reconstruct(const struct GtRegistry *registry,
                             const char *irrep_label,
                             const double *phi,
                             double *out_matrix,
                             double *out_min_eigenvalue);

// Decide whether K stochastic n-vectors (element-major doubles) form the
// tomogram of a density state. Fills `out_verdict`; when accepted and
// `out_state` is non-null, also writes the recovered n×n matrix.
//
// # Safety
// `tau` must hold K·n doubles, `out_state` (when non-null) 2n² doubles.
enum GtStatus gt_decide(const struct GtRegistry *registry,
                        const char *irrep_label,
                        const double *tau,
                        struct GtVerdict *out_verdict,
                        double *out_state);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GTOMO_H */
