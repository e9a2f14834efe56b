#ifndef IOTACX_H
#define IOTACX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum IcxStatus {
  ICX_STATUS_OK = 0,
  ICX_STATUS_NULL_POINTER = 1,
  ICX_STATUS_INVALID_INPUT = 2,
  ICX_STATUS_PARSE = 3,
  ICX_STATUS_NOT_FOUND = 4,
  ICX_STATUS_OUT_OF_SCOPE = 5,
  ICX_STATUS_INTERNAL = 6,
} IcxStatus;

// An opaque complex: a knot complex over F2[U,V] or an ι-complex over F2[U].
typedef struct IcxComplex IcxComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *icx_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void icx_string_free(char *s);

// Releases a complex. Null is ignored.
//
// # Safety
// `c` must come from this library and not be freed twice.
void icx_complex_free(struct IcxComplex *c);

// Parses a document in the text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum IcxStatus icx_complex_parse(const char *text, struct IcxComplex **out);

// Canonical text of a complex.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum IcxStatus icx_complex_to_text(const struct IcxComplex *c, char **out);

// Number of generators, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t icx_complex_len(const struct IcxComplex *c);

// Whether the complex is over F2[U,V].
//
// # Safety
// `c` must be null or a live handle.
bool icx_complex_is_knot(const struct IcxComplex *c);

// Staircase complex of the torus knot T(p,q).
//
// # Safety
// `out` must be writable.
enum IcxStatus icx_torus_cfk(uint32_t p, uint32_t q, struct IcxComplex **out);

// The box complex for `n`.
//
// # Safety
// `out` must be writable.
enum IcxStatus icx_box(uint32_t n, struct IcxComplex **out);

// The standard complex with parameters like `"+,-1,+,-2"`.
//
// # Safety
// `params` must be a NUL-terminated string; `out` must be writable.
enum IcxStatus icx_standard(const char *params, struct IcxComplex **out);

// Tensor product of two complexes over the same ring.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum IcxStatus icx_tensor(const struct IcxComplex *a,
                          const struct IcxComplex *b,
                          struct IcxComplex **out);

// Dual complex.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum IcxStatus icx_dual(const struct IcxComplex *a, struct IcxComplex **out);

// Alexander-grading-zero subcomplex of a knot complex.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum IcxStatus icx_a0(const struct IcxComplex *a, struct IcxComplex **out);

// Cancels every unit entry of the differential.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum IcxStatus icx_reduce(const struct IcxComplex *a, struct IcxComplex **out);

// Checks the involution axioms; the verdict goes to `ok`.
//
// # Safety
// `c` must be a live handle; `ok` must be writable.
enum IcxStatus icx_verify(const struct IcxComplex *c, bool almost, bool *ok);

// Decides (almost) local equivalence; the verdict goes to `ok`. `almost` is
// ignored for knot complexes.
//
// # Safety
// `a`, `b` must be live handles; `ok` must be writable.
enum IcxStatus icx_equivalent(const struct IcxComplex *a,
                              const struct IcxComplex *b,
                              bool almost,
                              bool *ok);

// Standard parameters of an ι-complex, as text like `"+,-1,+,-2"`.
// Returns `NOT_FOUND` when the bounds are exhausted.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum IcxStatus icx_standard_rep(const struct IcxComplex *c,
                                size_t max_steps,
                                uint32_t max_weight,
                                char **out);

// Parameters of a sum of C(n) terms written like `"+3,-2"`.
//
// # Safety
// `terms` must be a NUL-terminated string; `out` must be writable.
enum IcxStatus icx_sum_params(const char *terms, char **out);

// Whether parameters lie in the Seifert fibered image.
//
// # Safety
// `params` must be a NUL-terminated string; `ok` must be writable.
enum IcxStatus icx_sf_member(const char *params, bool *ok);

// Standard parameters and SF verdict for `Y_n`.
//
// # Safety
// `params` and `sf` must be writable.
enum IcxStatus icx_yn(uint32_t n, size_t max_steps, uint32_t max_weight, char **params, bool *sf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IOTACX_H */
