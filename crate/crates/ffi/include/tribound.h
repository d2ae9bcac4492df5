#ifndef TRIBOUND_H
#define TRIBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TbStatus {
  TB_STATUS_OK = 0,
  TB_STATUS_NULL_POINTER = 1,
  TB_STATUS_INVALID_UTF8 = 2,
  TB_STATUS_PARSE_ERROR = 3,
  /**
   * Structurally invalid triangulation, or bad argument value.
   */
  TB_STATUS_INVALID_INPUT = 4,
  /**
   * The operation's precondition does not hold (partial input, wrong
   * dimension, ...).
   */
  TB_STATUS_PRECONDITION = 5,
  TB_STATUS_UNKNOWN_NAME = 6,
  /**
   * Float modulus too close to a boundary curve to classify.
   */
  TB_STATUS_AMBIGUOUS = 7,
  TB_STATUS_PANIC = 8,
} TbStatus;

typedef enum TbShapeClass {
  TB_SHAPE_CLASS_RECTANGULAR = 0,
  TB_SHAPE_CLASS_RHOMBIC = 1,
  TB_SHAPE_CLASS_GENERIC = 2,
} TbShapeClass;

typedef enum TbVerdict {
  TB_VERDICT_OBSTRUCTION_VIOLATED = 0,
  TB_VERDICT_INCONCLUSIVE = 1,
  TB_VERDICT_INAPPLICABLE = 2,
} TbVerdict;

/**
 * Opaque triangulation handle.
 */
typedef struct TbTriangulation TbTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *tb_last_error(void);

/**
 * Parses the text file format. Syntax only: structural defects show up in
 * [`tb_triangulation_validate`].
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum TbStatus tb_triangulation_parse(const char *text, struct TbTriangulation **out);

/**
 * Named triangulation: `fig8`, `sibling`, `coneY`, `coneXZ` or `paperT`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum TbStatus tb_triangulation_builtin(const char *name, struct TbTriangulation **out);

/**
 * # Safety
 * `t` must come from this library and not be freed twice. Null is ignored.
 */
void tb_triangulation_free(struct TbTriangulation *t);

/**
 * Canonical text form; release with [`tb_string_free`].
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_triangulation_serialize(const struct TbTriangulation *t, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void tb_string_free(char *s);

/**
 * Writes whether the triangulation passes validation. On failure the
 * defects are available from [`tb_last_error`] even though the call
 * returns `TB_STATUS_OK`.
 *
 * # Safety
 * `t` must be a live handle; `valid_out` must be writable.
 */
enum TbStatus tb_triangulation_validate(const struct TbTriangulation *t, bool *valid_out);

/**
 * # Safety
 * `t` must be a live handle; out pointers must be writable.
 */
enum TbStatus tb_triangulation_shape(const struct TbTriangulation *t,
                                     size_t *dimension,
                                     size_t *simplex_count,
                                     bool *partial);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_euler_characteristic(const struct TbTriangulation *t, int64_t *out);

/**
 * Number of classes of `k`-faces.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_face_class_count(const struct TbTriangulation *t, size_t k, size_t *out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_is_orientable(const struct TbTriangulation *t, bool *out);

/**
 * Whether every cycle of codimension-2 faces has length `required` and a
 * trivial return map.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_check_valence(const struct TbTriangulation *t, size_t required, bool *out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum TbStatus tb_isomorphic(const struct TbTriangulation *a,
                            const struct TbTriangulation *b,
                            bool *out);

/**
 * Cone with apex label `n+2`; the result is a new handle.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum TbStatus tb_cone(const struct TbTriangulation *t, struct TbTriangulation **out);

/**
 * Runs the seven checks on the 4-dimensional construction. `report_json`
 * may be null; otherwise it receives the full report (free with
 * [`tb_string_free`]).
 *
 * # Safety
 * `all_passed` must be writable; `report_json` null or writable.
 */
enum TbStatus tb_verify_paper(bool *all_passed, char **report_json);

/**
 * Classifies a modulus such as `-1/2+1/2*sqrt(3)*i`. `epsilon > 0` forces
 * the floating path with that tolerance; otherwise exact input stays exact.
 *
 * # Safety
 * `modulus_text` must be a NUL-terminated string; `out` must be writable.
 */
enum TbStatus tb_cusp_classify(const char *modulus_text, double epsilon, enum TbShapeClass *out);

/**
 * Pairing obstruction over `count` cusp moduli. The verdict's reason is
 * left in [`tb_last_error`]'s buffer only on failure.
 *
 * # Safety
 * `moduli` must point to `count` NUL-terminated strings; `out` writable.
 */
enum TbStatus tb_cusp_obstruct(const char *const *moduli,
                               size_t count,
                               double epsilon,
                               enum TbVerdict *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TbStatus tb_trace_field_obstruction(uint64_t num_cusps, uint64_t degree, enum TbVerdict *out);

/**
 * Excluded indices (-2, -1, 0, 1) return `TB_STATUS_INVALID_INPUT`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TbStatus tb_twist_knot_verdict(int64_t m, enum TbVerdict *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TbStatus tb_euler_parity_obstruction(int64_t n, int64_t chi, enum TbVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIBOUND_H */
