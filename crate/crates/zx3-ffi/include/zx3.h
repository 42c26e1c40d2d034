/* C interface to the zx3 qutrit ZX-calculus engine. */

#ifndef ZX3_H
#define ZX3_H

/* Generated by cbindgen from the zx3-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum Zx3Status {
  ZX3_STATUS_OK = 0,
  // A pointer argument was null.
  ZX3_STATUS_NULL_ARGUMENT = 1,
  // The input could not be parsed as a diagram.
  ZX3_STATUS_PARSE = 2,
  // The diagram violates a structural invariant.
  ZX3_STATUS_INVALID = 3,
  // The two diagrams have different arities.
  ZX3_STATUS_ARITY_MISMATCH = 4,
  // An intermediate tensor exceeded the contraction cap.
  ZX3_STATUS_SIZE_CAP = 5,
  // Any other engine failure; see zx3_last_error.
  ZX3_STATUS_INTERNAL = 6,
} Zx3Status;

// Verdict of the equality decision.
typedef enum Zx3Verdict {
  ZX3_VERDICT_EQUAL = 0,
  ZX3_VERDICT_UNEQUAL = 1,
  // Both diagrams denote the zero map of equal arity.
  ZX3_VERDICT_BOTH_ZERO = 2,
} Zx3Verdict;

// An open diagram of the qutrit calculus (opaque).
typedef struct Zx3Diagram Zx3Diagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Latest error message on this thread; owned by the library, valid until
// the next failing call.
const char *zx3_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must have been returned by a zx3 function and not freed before.
void zx3_string_free(char *s);

// Parse a diagram from its text or JSON form.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum Zx3Status zx3_diagram_parse(const char *text, struct Zx3Diagram **out);

// Generate the seeded random stabilizer diagram.
//
// # Safety
// `out` must be a valid pointer.
enum Zx3Status zx3_diagram_random(uintptr_t wires,
                                  uintptr_t gates,
                                  uint64_t seed,
                                  struct Zx3Diagram **out);

// Release a diagram handle.
//
// # Safety
// `d` must have come from this library and not be freed twice.
void zx3_diagram_free(struct Zx3Diagram *d);

// Number of inputs and outputs of a diagram.
//
// # Safety
// All pointers must be valid.
enum Zx3Status zx3_diagram_arity(const struct Zx3Diagram *d, uintptr_t *inputs, uintptr_t *outputs);

// Canonical text form of a diagram.
//
// # Safety
// All pointers must be valid; free the result with zx3_string_free.
enum Zx3Status zx3_diagram_serialize(const struct Zx3Diagram *d, char **out);

// Interpret a diagram as an exact matrix; the result is a JSON object with
// fields rows, cols and entries (pairs [u, v] meaning u + vω).
//
// # Safety
// All pointers must be valid; free the result with zx3_string_free.
enum Zx3Status zx3_interpret_json(const struct Zx3Diagram *d, char **out);

// Normalize a diagram to reduced GS-LC form, returned as JSON. With
// `check` nonzero the result is cross-validated against the interpreter.
//
// # Safety
// All pointers must be valid; free the result with zx3_string_free.
enum Zx3Status zx3_normalize_json(const struct Zx3Diagram *d, int32_t check, char **out);

// Decide equality of two diagrams up to a nonzero scalar.
//
// # Safety
// All pointers must be valid.
enum Zx3Status zx3_eq(const struct Zx3Diagram *d1,
                      const struct Zx3Diagram *d2,
                      int32_t check,
                      enum Zx3Verdict *verdict);

// Run the randomized self-test; returns Ok when every verdict agrees with
// the exact interpreter.
enum Zx3Status zx3_selftest(uintptr_t trials, uint64_t seed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZX3_H */
