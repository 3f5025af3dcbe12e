#ifndef TORIC_H
#define TORIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum ToricStatus {
  TORIC_STATUS_OK = 0,
  TORIC_STATUS_NULL_POINTER = 1,
  TORIC_STATUS_INVALID_UTF8 = 2,
  TORIC_STATUS_PARSE = 3,
  TORIC_STATUS_INPUT = 4,
  TORIC_STATUS_DOMAIN = 5,
  TORIC_STATUS_UNSUPPORTED = 6,
  TORIC_STATUS_DEGENERATE_DIRECTION = 7,
  TORIC_STATUS_NUMERIC = 8,
  TORIC_STATUS_CONSISTENCY = 9,
  TORIC_STATUS_PANIC = 10,
} ToricStatus;

/**
 * Opaque concave piecewise-affine function with rational data.
 */
typedef struct ToricFunction ToricFunction;

/**
 * Opaque rational polyhedron.
 */
typedef struct ToricPolytope ToricPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *toric_last_error(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void toric_string_free(char *s);

/**
 * Builds a polyhedron from `{"dim", "vertices", "rays"}` JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ToricStatus toric_polytope_from_json(const char *json, struct ToricPolytope **out);

/**
 * # Safety
 * `p` must come from `toric_polytope_from_json` and not have been freed.
 */
void toric_polytope_free(struct ToricPolytope *p);

/**
 * Dimension of the polyhedron's affine hull.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum ToricStatus toric_polytope_dim(const struct ToricPolytope *p, size_t *out);

/**
 * Euclidean volume as an exact rational string ("p/q") and as a double.
 * Either output pointer may be NULL.
 *
 * # Safety
 * `p` must be a live handle; non-NULL outputs must be valid pointers.
 */
enum ToricStatus toric_polytope_volume(const struct ToricPolytope *p, char **exact, double *approx);

/**
 * V-representation as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum ToricStatus toric_polytope_to_json(const struct ToricPolytope *p, char **out);

/**
 * Builds a function from `{"dim", "pieces": [{"m", "c"}], "domain"}` JSON with
 * rational constants.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ToricStatus toric_function_from_json(const char *json, struct ToricFunction **out);

/**
 * # Safety
 * `f` must come from `toric_function_from_json` and not have been freed.
 */
void toric_function_free(struct ToricFunction *f);

/**
 * Evaluates at a point given as a JSON array of rationals. Outside the
 * domain the result is `Domain`.
 *
 * # Safety
 * `f` must be a live handle, `point` a NUL-terminated string, `out` valid.
 */
enum ToricStatus toric_function_eval(const struct ToricFunction *f, const char *point, char **out);

/**
 * Local height of the toric metric with roof `f` at `place` ("inf" or a
 * prime), as JSON `{"exact", "float"}`.
 *
 * # Safety
 * `f` must be a live handle, `place` a NUL-terminated string, `out` valid.
 */
enum ToricStatus toric_local_height(const struct ToricFunction *f, const char *place, char **out);

/**
 * Height of ℙⁿ with the Fubini-Study metric, as an exact rational string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ToricStatus toric_fubini_study_height(size_t n, char **out);

/**
 * Height of the rational normal curve of degree `r`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ToricStatus toric_veronese_height(uint64_t r, double *out);

/**
 * Degree and height of the projective bundle with twists `a[0..len]`, as JSON
 * `{"degree", "height"}`.
 *
 * # Safety
 * `a` must point to `len` readable values and `out` must be valid.
 */
enum ToricStatus toric_bundle_height(size_t n, const uint64_t *a, size_t len, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_H */
