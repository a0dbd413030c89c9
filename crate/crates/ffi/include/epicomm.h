#ifndef EPICOMM_H
#define EPICOMM_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of an FFI call.
typedef enum EcStatus {
  EC_STATUS_OK = 0,
  EC_STATUS_NULL_POINTER = 1,
  EC_STATUS_INVALID_UTF8 = 2,
  EC_STATUS_PANIC = 3,
  EC_STATUS_SYNTAX_ERROR = 10,
  EC_STATUS_EMPTY_GROUP = 11,
  EC_STATUS_DANGLING_WORLD = 12,
  EC_STATUS_MISSING_AGENT_RELATION = 13,
  EC_STATUS_UNKNOWN_ATOM = 14,
  EC_STATUS_UNKNOWN_AGENT = 15,
  EC_STATUS_UNKNOWN_WORLD = 16,
  EC_STATUS_DUPLICATE_NAME = 17,
  EC_STATUS_EMPTY_MODEL = 18,
  EC_STATUS_TOO_MANY_WORLDS = 19,
  EC_STATUS_MODEL_FORMAT = 20,
  EC_STATUS_DEFINITION_MISMATCH = 21,
  EC_STATUS_ALPHA_NOT_REFLEXIVE = 22,
  EC_STATUS_MEASURE_VIOLATION = 23,
  EC_STATUS_BOUNDS_TOO_LARGE = 24,
  EC_STATUS_UNKNOWN_SCHEMA = 25,
  EC_STATUS_INVALID_BOUNDS = 26,
} EcStatus;

// Opaque model handle with an optional designated world.
typedef struct EcModel EcModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next FFI call on the same thread.
const char *ec_last_error_message(void);

// Parses a model in the text format.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum EcStatus ec_model_parse(const char *text, struct EcModel **out);

// Releases a model. NULL is ignored.
//
// # Safety
// `model` must come from this library and not be used afterwards.
void ec_model_free(struct EcModel *model);

// Number of worlds, or 0 for NULL.
//
// # Safety
// `model` must be NULL or a live handle.
size_t ec_model_world_count(const struct EcModel *model);

// Renders a model in the text format.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
enum EcStatus ec_model_to_text(const struct EcModel *model, char **out);

// Renders a model in Graphviz format.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
enum EcStatus ec_model_to_dot(const struct EcModel *model, char **out);

// Evaluates `formula` at the named world.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum EcStatus ec_check(const struct EcModel *model,
                       const char *world,
                       const char *formula,
                       bool *out);

// Everyone shares everything.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
enum EcStatus ec_apply_eee(const struct EcModel *model, struct EcModel **out);

// The comma-separated `agents` share everything.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum EcStatus ec_apply_see(const struct EcModel *model, const char *agents, struct EcModel **out);

// The comma-separated `agents` share what they know about `topic`.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum EcStatus ec_apply_sse(const struct EcModel *model,
                           const char *agents,
                           const char *topic,
                           struct EcModel **out);

// Reading event with an assignment such as `a:a,b;b:b`.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum EcStatus ec_apply_read(const struct EcModel *model, const char *alpha, struct EcModel **out);

// Static translation of `formula`. `agents` is the full roster; NULL
// means the agents occurring in the formula.
//
// # Safety
// `formula` must be a valid string, `agents` NULL or a valid string, and
// `out` a valid pointer.
enum EcStatus ec_translate(const char *formula, const char *agents, char **out);

// Bounded validity search. `sample == 0` searches exhaustively; otherwise
// `sample` random models are drawn with `seed`. On a countermodel,
// `*valid` is false and, if `countermodel` is not NULL, it receives a new
// handle whose designated world falsifies the formula.
//
// # Safety
// String arguments must be valid; `valid` must be a valid pointer;
// `countermodel` may be NULL.
enum EcStatus ec_validity(const char *formula,
                          size_t max_worlds,
                          const char *agents,
                          const char *atoms,
                          size_t sample,
                          uint64_t seed,
                          bool *valid,
                          struct EcModel **countermodel);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void ec_string_free(char *s);

// Stable name of a status, e.g. `"unknown-world"`.
const char *ec_status_name(enum EcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EPICOMM_H */
