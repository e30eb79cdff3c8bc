/* C interface to the ratkit rational-expression / automaton library. */

#ifndef RATKIT_H
#define RATKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Expression→automaton construction selector.
 */
typedef enum {
  RATKIT_DELTA_STANDARD = 0,
  RATKIT_DELTA_DERIVED_TERM = 1,
  RATKIT_DELTA_THOMPSON = 2,
  RATKIT_DELTA_EGGAN = 3,
} ratkit_delta_method;

/**
 * Automaton→expression algorithm selector.
 */
typedef enum {
  RATKIT_GAMMA_STATE_ELIMINATION = 0,
  RATKIT_GAMMA_SYSTEM_SOLUTION = 1,
  RATKIT_GAMMA_MCNAUGHTON_YAMADA = 2,
  RATKIT_GAMMA_RECURSIVE = 3,
} ratkit_gamma_method;

/**
 * Semiring selector.
 */
typedef enum {
  RATKIT_SEMIRING_B = 0,
  RATKIT_SEMIRING_N = 1,
  RATKIT_SEMIRING_Z = 2,
  RATKIT_SEMIRING_Q = 3,
  RATKIT_SEMIRING_MINPLUS = 4,
} ratkit_semiring;

/**
 * Status of a ratkit call.
 */
typedef enum {
  RATKIT_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  RATKIT_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RATKIT_BAD_UTF8 = 2,
  /**
   * The input failed to parse or an operand was invalid; see
   * `ratkit_last_error`.
   */
  RATKIT_ERROR = 3,
  /**
   * The library panicked; see `ratkit_last_error`.
   */
  RATKIT_PANIC = 4,
} ratkit_status;

/**
 * Equivalence verdict.
 */
typedef enum {
  RATKIT_EQUIVALENT = 0,
  RATKIT_NOT_EQUIVALENT = 1,
  /**
   * Equal on every sampled word, but the method was not exact.
   */
  RATKIT_SAMPLED_EQUIVALENT = 3,
} ratkit_verdict;

/**
 * Opaque automaton handle.
 */
typedef struct ratkit_automaton ratkit_automaton;

/**
 * Opaque rational expression handle.
 */
typedef struct ratkit_expr ratkit_expr;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failing call on this thread, or NULL.  The
 * pointer stays valid until the next failing ratkit call on the same
 * thread; do not free it.
 */
const char *ratkit_last_error(void);

/**
 * Release a string returned by this library.
 */
void ratkit_string_free(char *s);

/**
 * Parse `text` over the given semiring into a new expression handle.
 */
ratkit_status ratkit_expr_parse(const char *text, ratkit_semiring semiring, ratkit_expr **out);

/**
 * Release an expression handle.
 */
void ratkit_expr_free(ratkit_expr *e);

/**
 * Print an expression in the ratkit grammar.
 */
ratkit_status ratkit_expr_to_string(const ratkit_expr *e, char **out);

/**
 * literal length ℓ(E), syntactic depth d(E), star height h(E).
 */
ratkit_status ratkit_expr_metrics(const ratkit_expr *e,
                                  uintptr_t *literal_length,
                                  uintptr_t *depth,
                                  uintptr_t *star_height);

/**
 * The constant term c(E) as a weight string; fails on invalid expressions.
 */
ratkit_status ratkit_expr_constant_term(const ratkit_expr *e, char **out);

/**
 * Star-normal form of a Boolean expression.
 */
ratkit_status ratkit_expr_star_normal_form(const ratkit_expr *e, ratkit_expr **out);

/**
 * Build an automaton from an expression with the chosen construction.
 */
ratkit_status ratkit_expr_to_automaton(const ratkit_expr *e,
                                       ratkit_delta_method method,
                                       ratkit_automaton **out);

/**
 * Decide equivalence of two expressions (undecided MinPlus verdicts come
 * back as RATKIT_SAMPLED_EQUIVALENT).
 */
ratkit_status ratkit_expr_equivalent(const ratkit_expr *e,
                                     const ratkit_expr *f,
                                     ratkit_verdict *out);

/**
 * Parse the line-oriented automaton text format.
 */
ratkit_status ratkit_automaton_parse(const char *text, ratkit_automaton **out);

/**
 * Release an automaton handle.
 */
void ratkit_automaton_free(ratkit_automaton *a);

/**
 * Serialize in the automaton text format.
 */
ratkit_status ratkit_automaton_to_text(const ratkit_automaton *a, char **out);

/**
 * GraphViz export.
 */
ratkit_status ratkit_automaton_to_dot(const ratkit_automaton *a, char **out);

ratkit_status ratkit_automaton_state_count(const ratkit_automaton *a, uintptr_t *out);

/**
 * Evaluate the automaton on a word; the weight is returned as text.
 */
ratkit_status ratkit_automaton_eval(const ratkit_automaton *a, const char *word, char **out);

/**
 * Replace ε-transitions by their backward closure (Boolean automata).
 */
ratkit_status ratkit_automaton_backward_closure(const ratkit_automaton *a, ratkit_automaton **out);

/**
 * Eggan's loop complexity (bounded exhaustive recursion).
 */
ratkit_status ratkit_automaton_loop_complexity(const ratkit_automaton *a, uintptr_t *out);

/**
 * The coarsest behaviour-preserving quotient.
 */
ratkit_status ratkit_automaton_minimal_quotient(const ratkit_automaton *a, ratkit_automaton **out);

/**
 * Compute an expression denoting the behaviour.  `order` may be NULL for
 * the ascending order; otherwise it must list every state once (it is the
 * elimination order for the first three methods and the leaf order of a
 * balanced division for the recursive one).
 */
ratkit_status ratkit_automaton_to_expr(const ratkit_automaton *a,
                                       ratkit_gamma_method method,
                                       const uintptr_t *order,
                                       uintptr_t order_len,
                                       ratkit_expr **out);

/**
 * Decide equivalence of two automata.
 */
ratkit_status ratkit_automaton_equivalent(const ratkit_automaton *a,
                                          const ratkit_automaton *b,
                                          ratkit_verdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATKIT_H */
