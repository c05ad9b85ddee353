/* unitrace - uniform random sampling of traces in systems of communicating
 * reactive modules, without building the global product model.
 *
 * C API over the C++ core: opaque handles, integer status codes, and a
 * thread-local message for the most recent failure. Every function that can
 * fail returns utr_status; out-parameters are written only on UTR_OK.
 * Strings returned through char** are heap-allocated and must be released
 * with utr_string_free / utr_string_array_free.
 */
#ifndef UNITRACE_H
#define UNITRACE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum utr_status {
    UTR_OK = 0,
    UTR_ERR_ARG = 1,      /* null handle or out-of-range argument */
    UTR_ERR_IO = 2,       /* unreadable input */
    UTR_ERR_PARSE = 3,    /* syntax or semantic error in an input text */
    UTR_ERR_DOMAIN = 4,   /* violated precondition (empty language, sync multiplicity, ...) */
    UTR_ERR_INTERNAL = 5
} utr_status;

typedef struct utr_system utr_system;       /* parsed reactive-module system */
typedef struct utr_automaton utr_automaton; /* letter-labelled finite automaton */
typedef struct utr_sampler utr_sampler;     /* uniform trace sampler bound to one length */

const char* utr_version(void);
/* message for the most recent failing call in this thread ("" if none) */
const char* utr_last_error(void);

void utr_string_free(char* s);
void utr_string_array_free(char** v, size_t n);

/* ---------- reactive-module systems ---------- */

utr_status utr_system_parse(const char* source, utr_system** out);
void utr_system_free(utr_system* sys);
/* canonical source form; reparsing yields a structurally equal system */
utr_status utr_system_print(const utr_system* sys, char** out);

size_t utr_system_module_count(const utr_system* sys);
const char* utr_system_module_name(const utr_system* sys, size_t module);
size_t utr_system_sync_label_count(const utr_system* sys);
const char* utr_system_sync_label(const utr_system* sys, size_t index);

/* Flatten one module to its automaton. With a NULL sync_label every command is
 * encoded with fresh per-transition letters; with a label, commands carrying
 * it emit the single shared synchronisation letter (other labels are
 * rejected). */
utr_status utr_system_flatten(const utr_system* sys, size_t module, const char* sync_label,
                              utr_automaton** out);

/* ---------- automata ---------- */

void utr_automaton_free(utr_automaton* a);
/* line-oriented interchange format; print/parse round-trip exactly */
utr_status utr_automaton_parse(const char* text, utr_automaton** out);
utr_status utr_automaton_print(const utr_automaton* a, char** out);
size_t utr_automaton_state_count(const utr_automaton* a);
size_t utr_automaton_transition_count(const utr_automaton* a);
/* newline-separated structural violations; empty string means valid */
utr_status utr_automaton_validate(const utr_automaton* a, char** report);

typedef struct utr_growth {
    int strongly_connected;
    int aperiodic;
    int unique_dominant_scc;
    int certified; /* single-dominant-term growth regime holds */
    char warning[240];
} utr_growth;
utr_status utr_automaton_growth(const utr_automaton* a, utr_growth* out);

/* exact number of accepted words of length n, as a decimal string */
utr_status utr_automaton_count(const utr_automaton* a, unsigned n, char** decimal);

typedef struct utr_asymptotics {
    double omega;             /* dominant growth rate: l(n) ~ C * omega^n */
    double c_const;           /* the constant C */
    unsigned fit_horizon;     /* horizon the pair was fitted at */
    double relative_residual; /* |C*omega^h / l(h) - 1| at the check horizon */
    int certified;
    char warning[240];
} utr_asymptotics;
/* dominant growth pair estimated from exact count ratios over the default
 * horizon ladder for `length` */
utr_status utr_automaton_asymptotics(const utr_automaton* a, unsigned length,
                                     utr_asymptotics* out);

/* ---------- products (brute-force constructions) ---------- */

/* shuffling automaton of disjoint-alphabet factors */
utr_status utr_product_shuffle(const utr_automaton* const* factors, size_t count,
                               utr_automaton** out);
/* synchronised product over the letter named alpha_id; every factor needs
 * exactly one alpha transition */
utr_status utr_product_sync(const utr_automaton* const* factors, size_t count,
                            const char* alpha_id, utr_automaton** out);

/* every accepted word of length n (space-separated letter ids, sorted);
 * refuses with UTR_ERR_DOMAIN when the exact count exceeds `limit` */
utr_status utr_automaton_enumerate(const utr_automaton* a, unsigned n, size_t limit,
                                   char*** words, size_t* count);

/* ---------- trace sampling ---------- */

typedef enum utr_mode {
    UTR_MODE_AUTO = 0,
    UTR_MODE_EXACT = 1,
    UTR_MODE_ASYMPTOTIC = 2
} utr_mode;

/* exact count of length-n system traces: the interleaving count l(n), or the
 * synchronised count s(n) when sync_label is non-NULL */
utr_status utr_system_count(const utr_system* sys, unsigned n, const char* sync_label,
                            char** decimal);

/* sampler for traces of exactly `length`; flattens every module, with the
 * shared sync letter when sync_label is non-NULL */
utr_status utr_sampler_new(const utr_system* sys, unsigned length, utr_mode mode,
                           const char* sync_label, uint64_t seed, utr_sampler** out);
void utr_sampler_free(utr_sampler* s);
const char* utr_sampler_mode(const utr_sampler* s);    /* "exact" | "asymptotic" */
const char* utr_sampler_warning(const utr_sampler* s); /* "" when clean */
/* one trace: letter display names, space-separated */
utr_status utr_sampler_draw(utr_sampler* s, char** trace);

/* ---------- random-walk estimation ---------- */

typedef struct utr_estimate_result {
    unsigned long n_samples; /* N = ceil(ln(2/delta) / (2 epsilon^2)) */
    unsigned long detections;
    double estimate;
} utr_estimate_result;

/* GAA: mean of N isotropic random walks of length <= depth; detect_expr is a
 * guard-syntax predicate over the system variables, fired when any visited
 * state satisfies it */
utr_status utr_estimate(const utr_system* sys, unsigned depth, const char* detect_expr,
                        double epsilon, double delta, uint64_t seed,
                        utr_estimate_result* out);

/* ---------- statistics ---------- */

/* Pearson chi-square of observed cell counts against the uniform null */
utr_status utr_chi_square_uniform(const uint64_t* counts, size_t cells, double* statistic,
                                  double* p_value);
/* total-variation distance of the empirical distribution from uniform */
utr_status utr_tv_uniform(const uint64_t* counts, size_t cells, double* tv);

#ifdef __cplusplus
}
#endif

#endif /* UNITRACE_H */
