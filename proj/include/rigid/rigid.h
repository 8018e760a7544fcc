/* C interface to the rigid library.
 *
 * Objects are opaque handles created by *_create / *_from_* functions and
 * released with the matching *_destroy. Functions returning text hand back
 * a heap string that the caller releases with rigid_string_free. On any
 * non-OK status, rigid_last_error() describes the failure (per thread).
 */
#ifndef RIGID_RIGID_H
#define RIGID_RIGID_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RIGID_BUILDING_LIBRARY)
#    define RIGID_API __declspec(dllexport)
#  else
#    define RIGID_API __declspec(dllimport)
#  endif
#else
#  define RIGID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rigid_status {
  RIGID_OK = 0,
  RIGID_ERR_INVALID_ARGUMENT = 1, /* bad arguments, malformed JSON, shape errors */
  RIGID_ERR_INCONSISTENCY = 2,    /* contradictory numerical results */
  RIGID_ERR_INTERNAL = 3
} rigid_status;

/* Values written by rigid_chain_alpha. */
typedef enum rigid_delta_kind {
  RIGID_DELTA_FINITE = 0,
  RIGID_DELTA_LOWER_BOUND = 1,
  RIGID_DELTA_INFINITE = 2
} rigid_delta_kind;

typedef struct rigid_config rigid_config;
typedef struct rigid_subspace rigid_subspace;
typedef struct rigid_family rigid_family;
typedef struct rigid_augmented rigid_augmented;

RIGID_API const char* rigid_version(void);
RIGID_API const char* rigid_last_error(void);
RIGID_API void rigid_string_free(char* s);

/* Configuration: k_max, seed, restarts and all numerical tolerances. */
RIGID_API rigid_status rigid_config_create(rigid_config** out);
RIGID_API void rigid_config_destroy(rigid_config* cfg);
RIGID_API rigid_status rigid_config_set_kmax(rigid_config* cfg, int k_max);
RIGID_API rigid_status rigid_config_set_seed(rigid_config* cfg, uint64_t seed);
RIGID_API rigid_status rigid_config_set_restarts(rigid_config* cfg, int restarts);
/* name is a tolerance key as it appears in rigid_config_to_json. */
RIGID_API rigid_status rigid_config_set_tolerance(rigid_config* cfg, const char* name, double value);
RIGID_API rigid_status rigid_config_get_tolerance(const rigid_config* cfg, const char* name, double* value);
RIGID_API rigid_status rigid_config_to_json(const rigid_config* cfg, char** out);

/* Subspaces of m x n matrices in the subspace file format. */
RIGID_API rigid_status rigid_subspace_from_json(const char* text, const rigid_config* cfg, rigid_subspace** out);
RIGID_API rigid_status rigid_subspace_to_json(const rigid_subspace* V, char** out);
RIGID_API rigid_status rigid_subspace_shape(const rigid_subspace* V, int* n, int* m, int* dim);
RIGID_API void rigid_subspace_destroy(rigid_subspace* V);

/* Constraint families: builtin by name, or linear from a subspace. */
RIGID_API rigid_status rigid_family_builtin(const char* name, int n, rigid_family** out);
RIGID_API rigid_status rigid_family_linear(const char* name, const rigid_subspace* V, rigid_family** out);
/* Tangent space at the family's base point. */
RIGID_API rigid_status rigid_family_tangent(const rigid_family* family, const rigid_config* cfg, rigid_subspace** out);
RIGID_API void rigid_family_destroy(rigid_family* family);

RIGID_API rigid_status rigid_augmented_from_json(const char* text, const rigid_config* cfg, rigid_augmented** out);
RIGID_API void rigid_augmented_destroy(rigid_augmented* V);

/* Analyses. Each writes a complete JSON report that embeds the effective
 * configuration. */
RIGID_API rigid_status rigid_chain_report(const rigid_subspace* V, const rigid_config* cfg, int include_bases,
                                          char** out);
RIGID_API rigid_status rigid_detect_report(const rigid_subspace* V, const rigid_config* cfg, char** out);
RIGID_API rigid_status rigid_classify_report(const rigid_subspace* V, const rigid_config* cfg, char** out);
RIGID_API rigid_status rigid_polysolve_report(const rigid_subspace* V, const rigid_config* cfg, char** out);
RIGID_API rigid_status rigid_verify_report(const rigid_subspace* V, const char* poly_json, int samples, double radius,
                                           double tol, const rigid_config* cfg, char** out);
RIGID_API rigid_status rigid_manifold_report(const rigid_family* family, int samples, const rigid_config* cfg,
                                             char** out);
/* matrix_json is an m x n row-major nested array. */
RIGID_API rigid_status rigid_jet_report(const rigid_augmented* V, const char* matrix_json, int degree,
                                        const rigid_config* cfg, char** out);

/* Typed access to the chain. alpha receives up to capacity entries;
 * *length is the full length regardless. */
RIGID_API rigid_status rigid_chain_alpha(const rigid_subspace* V, const rigid_config* cfg, int* alpha, size_t capacity,
                                         size_t* length, rigid_delta_kind* delta_kind, int* delta_value);

#ifdef __cplusplus
}
#endif

#endif
