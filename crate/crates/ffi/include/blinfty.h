#ifndef BLINFTY_H
#define BLINFTY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BlBoundedKind {
  BL_BOUNDED_KIND_EXACT = 0,
  BL_BOUNDED_KIND_AT_MOST = 1,
  BL_BOUNDED_KIND_NOT_FOUND = 2,
} BlBoundedKind;

typedef enum BlStatus {
  BL_STATUS_OK = 0,
  BL_STATUS_NULL_ARGUMENT = 1,
  BL_STATUS_INVALID_UTF8 = 2,
  BL_STATUS_PARSE = 3,
  BL_STATUS_INVALID_INPUT = 4,
  BL_STATUS_INCONCLUSIVE = 5,
  BL_STATUS_INCONSISTENT = 6,
  BL_STATUS_STRUCTURAL = 7,
  BL_STATUS_PANIC = 8,
} BlStatus;

/**
 * Opaque parsed document.
 */
typedef struct BlDocument BlDocument;

/**
 * A bounded search answer; `level` is meaningless for `NotFound`.
 */
typedef struct BlBounded {
  enum BlBoundedKind kind;
  uint32_t level;
} BlBounded;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static storage.
 */
const char *bl_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *bl_last_error(void);

/**
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_document_parse(const char *text, struct BlDocument **out);

/**
 * Loads a bundled fixture by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_fixture(const char *name, struct BlDocument **out);

/**
 * # Safety
 * `doc` must come from this library and not be used afterwards. Null is ignored.
 */
void bl_document_free(struct BlDocument *doc);

/**
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum BlStatus bl_document_serialize(const struct BlDocument *doc, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void bl_string_free(char *s);

/**
 * Checks the document's structure on every input word with at most
 * `max_arity` letters. `*verified` is 1 or 0.
 *
 * # Safety
 * `doc` must be a live handle and `verified` a valid pointer.
 */
enum BlStatus bl_check_structure(const struct BlDocument *doc, size_t max_arity, int32_t *verified);

/**
 * Torsion of the document's structure with at most `word_bound` clusters
 * and `max_letters` letters.
 *
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum BlStatus bl_torsion(const struct BlDocument *doc,
                         size_t word_bound,
                         size_t max_letters,
                         struct BlBounded *out);

/**
 * O and Õ for the first augmentation (zero if none) and the pointed table.
 *
 * # Safety
 * `doc` must be a live handle; `o` and `o_tilde` valid pointers.
 */
enum BlStatus bl_order(const struct BlDocument *doc,
                       size_t word_bound,
                       size_t max_letters,
                       struct BlBounded *o,
                       struct BlBounded *o_tilde);

/**
 * Combines two hierarchy values written as `<level>^<zone>`.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
 */
enum BlStatus bl_hierarchy_combine(const char *a, const char *b, char **out);

/**
 * Runs the command-line front end on `argv[0..argc]` (without the program
 * name). The report goes to `*out_stdout`, the exit code to `*exit_code`.
 * Returns `BL_STATUS_OK` whenever the command ran, whatever its exit code.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; the outputs must be valid.
 */
enum BlStatus bl_cli_run(size_t argc,
                         const char *const *argv,
                         char **out_stdout,
                         int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLINFTY_H */
