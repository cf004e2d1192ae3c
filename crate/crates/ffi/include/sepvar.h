/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SEPVAR_H
#define SEPVAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SepvarStatus {
  SEPVAR_STATUS_OK = 0,
  SEPVAR_STATUS_NULL_POINTER = 1,
  SEPVAR_STATUS_INVALID_UTF8 = 2,
  SEPVAR_STATUS_PARSE = 3,
  /*
   Input outside the domain of the operation.
   */
  SEPVAR_STATUS_PRECONDITION = 4,
  /*
   The computation failed or hit an iteration cap.
   */
  SEPVAR_STATUS_COMPUTATION = 5,
  SEPVAR_STATUS_OUT_OF_RANGE = 6,
  SEPVAR_STATUS_PANIC = 7,
} SepvarStatus;

/*
 Result of the minimal separated multiple computation.
 */
typedef struct SepvarMinsep SepvarMinsep;

/*
 A polynomial with its variable names.
 */
typedef struct SepvarPoly SepvarPoly;

/*
 Generators of the algebra of separated polynomials in an ideal.
 */
typedef struct SepvarSeparation SepvarSeparation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or an empty string.
 The pointer stays valid until the next call into the library on the
 same thread.
 */
const char *sepvar_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *sepvar_version(void);

/*
 Releases a string returned by the library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void sepvar_string_free(char *s);

/*
 Parses `text` over the comma-separated variable names `vars`
 (`"x,y"` when null).

 # Safety
 `text` and a non-null `vars` must be NUL-terminated strings; `out` must
 be writable.
 */
enum SepvarStatus sepvar_poly_parse(const char *text, const char *vars, struct SepvarPoly **out);

/*
 Canonical text of a polynomial; free with [`sepvar_string_free`].

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_poly_to_string(const struct SepvarPoly *p, char **out);

/*
 # Safety
 `p` must be null or a live handle from [`sepvar_poly_parse`].
 */
void sepvar_poly_free(struct SepvarPoly *p);

/*
 Minimal separated multiple of a bivariate polynomial.

 # Safety
 `p` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_minsep(const struct SepvarPoly *p, struct SepvarMinsep **out);

/*
 Whether a nontrivial separated multiple exists.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_minsep_is_separable(const struct SepvarMinsep *m, bool *out);

/*
 The generator `(f, g)`; `(1, 1)` when not separable. Both strings must
 be freed with [`sepvar_string_free`].

 # Safety
 `m` must be a live handle; `f` and `g` writable.
 */
enum SepvarStatus sepvar_minsep_generator(const struct SepvarMinsep *m, char **f, char **g);

/*
 JSON object `{separable, f, g, N, diagnostic}`.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_minsep_to_json(const struct SepvarMinsep *m, char **out);

/*
 # Safety
 `m` must be null or a live handle from [`sepvar_minsep`].
 */
void sepvar_minsep_free(struct SepvarMinsep *m);

/*
 Generators of the algebra of separated polynomials in the ideal spanned
 by `gens[0..n]`. All generators must share the same two variables.

 # Safety
 `gens` must point to `n` live handles (it may be null when `n == 0`);
 `out` must be writable.
 */
enum SepvarStatus sepvar_separate(const struct SepvarPoly *const *gens,
                                  size_t n,
                                  struct SepvarSeparation **out);

/*
 Number of generator pairs.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_separation_count(const struct SepvarSeparation *s, size_t *out);

/*
 Generator pair `index`; strings are freed with [`sepvar_string_free`].

 # Safety
 `s` must be a live handle; `f` and `g` writable.
 */
enum SepvarStatus sepvar_separation_generator(const struct SepvarSeparation *s,
                                              size_t index,
                                              char **f,
                                              char **g);

/*
 JSON object `{generators, certificates, a, path}`.

 # Safety
 `s` must be a live handle and `out` writable.
 */
enum SepvarStatus sepvar_separation_to_json(const struct SepvarSeparation *s, char **out);

/*
 # Safety
 `s` must be null or a live handle from [`sepvar_separate`].
 */
void sepvar_separation_free(struct SepvarSeparation *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPVAR_H */
