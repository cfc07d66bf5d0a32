/* C interface to hornlab: parsing, evaluation, Datalog, translations, and
 * equivalence checks over finite structures.
 *
 * Every function returns a status code. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Strings returned
 * through out-parameters stay valid until the owning handle is freed.
 * After a failing call, hornlab_last_error() describes the failure for the
 * calling thread.
 */
#ifndef HORNLAB_H
#define HORNLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HORNLAB_API __declspec(dllexport)
#else
#define HORNLAB_API __attribute__((visibility("default")))
#endif

typedef enum hornlab_status {
  HORNLAB_OK = 0,
  HORNLAB_VIOLATION = 1,     /* counterexample or property violation found */
  HORNLAB_INPUT_ERROR = 2,   /* malformed text, bad arguments, or unsupported shape */
  HORNLAB_BUDGET_EXCEEDED = 3,
  HORNLAB_INTERNAL_ERROR = 4
} hornlab_status;

typedef struct hornlab_formula hornlab_formula;
typedef struct hornlab_program hornlab_program;
typedef struct hornlab_structure hornlab_structure;
typedef struct hornlab_result hornlab_result;

HORNLAB_API const char* hornlab_version(void);
HORNLAB_API const char* hornlab_last_error(void);

/* Default second-order budget: HORNLAB_BUDGET from the environment, else 65536. */
HORNLAB_API double hornlab_default_budget(void);

/* --- artifacts ------------------------------------------------------------ */

HORNLAB_API int hornlab_formula_parse(const char* text, hornlab_formula** out);
HORNLAB_API void hornlab_formula_free(hornlab_formula* f);
/* Canonical text, including vocabulary and query headers. */
HORNLAB_API int hornlab_formula_text(const hornlab_formula* f, const char** out);
/* Comma-separated fragment tags. */
HORNLAB_API int hornlab_formula_fragments(const hornlab_formula* f, const char** out);
HORNLAB_API int hornlab_formula_query_arity(const hornlab_formula* f, size_t* out);

HORNLAB_API int hornlab_program_parse(const char* text, hornlab_program** out);
HORNLAB_API void hornlab_program_free(hornlab_program* p);
HORNLAB_API int hornlab_program_text(const hornlab_program* p, const char** out);
/* DATALOG, DATALOG*, DATALOG^r, DATALOG^{*r}, prefixed with S- when stratified. */
HORNLAB_API int hornlab_program_variant(const hornlab_program* p, const char** out);

HORNLAB_API int hornlab_structure_parse(const char* text, hornlab_structure** out);
HORNLAB_API void hornlab_structure_free(hornlab_structure* s);
HORNLAB_API int hornlab_structure_text(const hornlab_structure* s, const char** out);
HORNLAB_API int hornlab_structure_size(const hornlab_structure* s, int* out);

/* --- evaluation ----------------------------------------------------------- */

/* Truth of the formula at the query tuple `args` (length = query arity). */
HORNLAB_API int hornlab_formula_holds(const hornlab_formula* f, const hornlab_structure* s, const int* args,
                                      size_t nargs, double budget, int* out);
/* Membership of `args` in the goal's fixed point. */
HORNLAB_API int hornlab_program_holds(const hornlab_program* p, const hornlab_structure* s, const int* args,
                                      size_t nargs, int* out);
/* Least stage at which `symbol` reaches its fixed point. */
HORNLAB_API int hornlab_program_stage_count(const hornlab_program* p, const hornlab_structure* s,
                                            const char* symbol, size_t* out);

/* --- commands ------------------------------------------------------------
 * Each command fills a result with a human-readable report, a machine-readable
 * report (first line "hornlab-report 1", then key=value lines), and, for
 * commands that produce an artifact, its text. The return value is the
 * command's status; the result is filled whenever the status is 0 or 1.
 */

HORNLAB_API void hornlab_result_free(hornlab_result* r);
HORNLAB_API const char* hornlab_result_text(const hornlab_result* r);
HORNLAB_API const char* hornlab_result_report(const hornlab_result* r);
/* NULL when the command produces no artifact. */
HORNLAB_API const char* hornlab_result_output(const hornlab_result* r);

/* kind: "fo", "so", "lfp", "datalog", or NULL to detect. */
HORNLAB_API int hornlab_cmd_parse(const char* text, const char* kind, hornlab_result** out);
/* assign: "x=0,y=2" or NULL; unassigned query variables are listed as an answer set. */
HORNLAB_API int hornlab_cmd_eval(const char* formula_text, const char* structure_text, const char* assign,
                                 double budget, hornlab_result** out);
HORNLAB_API int hornlab_cmd_run_datalog(const char* program_text, const char* structure_text, int trace_stages,
                                        hornlab_result** out);
/* rule: lemma1 prop1 fo2dlr star2r horn2dl dl2horn dlr2lfp lfp2dlr fo2sdl sdl-horn sig11 pi11-ehorn */
HORNLAB_API int hornlab_cmd_translate(const char* rule, const char* input_text, hornlab_result** out);
/* samples = 0 checks every structure up to max_size; otherwise `samples` seeded structures per size. */
HORNLAB_API int hornlab_cmd_equiv(const char* a_text, const char* b_text, const char* vocab_text, int max_size,
                                  size_t samples, unsigned long long seed, double budget, hornlab_result** out);
/* direction: "sub" or "ext". */
HORNLAB_API int hornlab_cmd_closure(const char* text, const char* direction, size_t trials, unsigned long long seed,
                                    int max_size, double budget, hornlab_result** out);
HORNLAB_API int hornlab_cmd_cnf_encode(const char* dimacs_text, hornlab_result** out);
/* name = NULL lists the corpus; otherwise the named artifact is the output. */
HORNLAB_API int hornlab_cmd_corpus(const char* name, hornlab_result** out);

#ifdef __cplusplus
}
#endif

#endif
