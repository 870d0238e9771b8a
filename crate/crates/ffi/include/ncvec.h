#ifndef NCVEC_H
#define NCVEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum NcvStatus {
  NCV_STATUS_OK = 0,
  NCV_STATUS_NULL_POINTER = 1,
  NCV_STATUS_INVALID_UTF8 = 2,
  NCV_STATUS_PARSE = 3,
  // Structure constants are not associative or the unit law fails.
  NCV_STATUS_INVALID_ALGEBRA = 4,
  NCV_STATUS_UNKNOWN_PRESET = 5,
  NCV_STATUS_BAD_PARAMS = 6,
  NCV_STATUS_NOT_A_DERIVATION = 7,
  // Shape and dimension mismatches between inputs.
  NCV_STATUS_SHAPE = 8,
  // An internal cross-check failed. Indicates a bug.
  NCV_STATUS_INCONSISTENT = 9,
  NCV_STATUS_PANIC = 10,
} NcvStatus;

// Opaque algebra handle.
typedef struct NcvAlgebra NcvAlgebra;

// Opaque handle to a computed reflexivity report.
typedef struct NcvReport NcvReport;

// Plain-data view of a report.
typedef struct NcvSummary {
  size_t algebra_dim;
  size_t center_dim;
  size_t module_dim;
  size_t star_dual_dim;
  size_t dual_dim;
  size_t bidual_dim;
  size_t embedding_rank;
  size_t ghost_covector_dim;
  size_t ghost_bidual_dim;
  bool injective;
  bool reflexive;
  bool nondegenerate;
  bool projective;
} NcvSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or null. The pointer is
// owned by the library and stays valid until the next failing call.
const char *ncv_last_error(void);

// Library version as a static nul-terminated string.
const char *ncv_version(void);

// Builds a preset algebra. `param` is the size or order; pass a negative
// value for presets without a parameter (`dual-numbers`, `quaternions`).
//
// # Safety
// `name` must be a nul-terminated string and `out` a writable pointer.
enum NcvStatus ncv_algebra_from_preset(const char *name, int64_t param, struct NcvAlgebra **out);

// Parses an algebra definition in the JSON input format.
//
// # Safety
// `json` must be a nul-terminated string and `out` a writable pointer.
enum NcvStatus ncv_algebra_from_json(const char *json, struct NcvAlgebra **out);

// Dimension of the algebra over Q, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t ncv_algebra_dim(const struct NcvAlgebra *alg);

// Dimension of the center, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t ncv_algebra_center_dim(const struct NcvAlgebra *alg);

// # Safety
// `alg` must be null or a handle not yet freed.
void ncv_algebra_free(struct NcvAlgebra *alg);

// Computes the reflexivity report for `V = Der(A)` when `submodule_json` is
// null, otherwise for the Z-closure of the given generator matrices.
//
// # Safety
// `alg` must be a live handle, `submodule_json` null or a nul-terminated
// string, and `out` a writable pointer.
enum NcvStatus ncv_report_compute(const struct NcvAlgebra *alg,
                                  const char *submodule_json,
                                  struct NcvReport **out);

// # Safety
// `report` must be a live handle and `out` a writable pointer.
enum NcvStatus ncv_report_summary(const struct NcvReport *report, struct NcvSummary *out);

// Serializes the report in the same canonical JSON the CLI prints. The
// string must be released with [`ncv_string_free`].
//
// # Safety
// `report` must be a live handle and `out` a writable pointer.
enum NcvStatus ncv_report_to_json(const struct NcvReport *report, bool with_bases, char **out);

// # Safety
// `report` must be null or a handle not yet freed.
void ncv_report_free(struct NcvReport *report);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ncv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCVEC_H */
