#ifndef FATA_H
#define FATA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FataStatus {
  FATA_STATUS_OK = 0,
  FATA_STATUS_NULL_ARGUMENT = 1,
  FATA_STATUS_INVALID_UTF8 = 2,
  FATA_STATUS_SYNTAX = 3,
  FATA_STATUS_INVALID = 4,
  FATA_STATUS_IO = 5,
  FATA_STATUS_ALPHABET_MISMATCH = 6,
  FATA_STATUS_CAP_EXCEEDED = 7,
  FATA_STATUS_PRECONDITION = 8,
  FATA_STATUS_INTERNAL = 9,
  FATA_STATUS_PANIC = 10,
} FataStatus;

typedef enum FataProductMode {
  FATA_PRODUCT_MODE_UNION = 0,
  FATA_PRODUCT_MODE_INTERSECTION = 1,
} FataProductMode;

/**
 * Opaque automaton handle.
 */
typedef struct FataAutomaton FataAutomaton;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *fata_last_error(void);

/**
 * Loads a `.fta` file.
 *
 * # Safety
 * `path` is a NUL-terminated string and `out` a valid pointer.
 */
enum FataStatus fata_automaton_load(const char *path, struct FataAutomaton **out);

/**
 * Parses `.fta` text.
 *
 * # Safety
 * `source` is a NUL-terminated string and `out` a valid pointer.
 */
enum FataStatus fata_automaton_parse(const char *source, struct FataAutomaton **out);

/**
 * # Safety
 * `m` is a live handle and `path` a NUL-terminated string.
 */
enum FataStatus fata_automaton_save(const struct FataAutomaton *m, const char *path);

/**
 * The `.fta` text of `m`, to be released with [`fata_string_free`].
 *
 * # Safety
 * `m` is a live handle and `out` a valid pointer.
 */
enum FataStatus fata_automaton_to_string(const struct FataAutomaton *m, char **out);

/**
 * # Safety
 * `m` is null or a handle not yet freed.
 */
void fata_automaton_free(struct FataAutomaton *m);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void fata_string_free(char *s);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live handle.
 */
size_t fata_automaton_num_states(const struct FataAutomaton *m);

/**
 * # Safety
 * `m` is null or a live handle.
 */
bool fata_automaton_is_deterministic(const struct FataAutomaton *m);

/**
 * Is the forest written in `forest_text` accepted?
 *
 * # Safety
 * `m` is a live handle, `forest_text` a NUL-terminated string and
 * `accepted` a valid pointer.
 */
enum FataStatus fata_member(const struct FataAutomaton *m, const char *forest_text, bool *accepted);

/**
 * Emptiness. When the language is not empty and `witness` is not null, a
 * smallest accepted forest is stored there.
 *
 * # Safety
 * `m` is a live handle, `empty` a valid pointer, `witness` null or valid.
 */
enum FataStatus fata_is_empty(const struct FataAutomaton *m, bool *empty, char **witness);

/**
 * Language equivalence; nondeterministic inputs are determinized first. A
 * witness separates the two languages.
 *
 * # Safety
 * `m1`, `m2` are live handles, `equal` a valid pointer, `witness` null or
 * valid.
 */
enum FataStatus fata_equivalent(const struct FataAutomaton *m1,
                                const struct FataAutomaton *m2,
                                bool *equal,
                                char **witness);

/**
 * `L(m1) ⊆ L(m2)`. A witness lies in `L(m1)` but not in `L(m2)`.
 *
 * # Safety
 * As [`fata_equivalent`].
 */
enum FataStatus fata_subset(const struct FataAutomaton *m1,
                            const struct FataAutomaton *m2,
                            bool *included,
                            char **witness);

/**
 * # Safety
 * `m` is a live handle and `out` a valid pointer.
 */
enum FataStatus fata_complement(const struct FataAutomaton *m, struct FataAutomaton **out);

/**
 * Subset construction, failing with `CapExceeded` beyond `max_subsets`.
 *
 * # Safety
 * `m` is a live handle and `out` a valid pointer.
 */
enum FataStatus fata_determinize(const struct FataAutomaton *m,
                                 size_t max_subsets,
                                 struct FataAutomaton **out);

/**
 * # Safety
 * `m1`, `m2` are live handles and `out` a valid pointer.
 */
enum FataStatus fata_product(const struct FataAutomaton *m1,
                             const struct FataAutomaton *m2,
                             enum FataProductMode mode,
                             struct FataAutomaton **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FATA_H */
