#ifndef GAT_H
#define GAT_H

/* C interface to the theory checker and equality engine.
 *
 * Every call that can fail returns a gat_status. Results are delivered as a
 * gat_report holding a human-readable text and, where one exists, a JSON
 * document. Objects returned through out-parameters are owned by the caller
 * and released with the matching *_free function. No call throws. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(GAT_BUILDING_LIBRARY)
#define GAT_API __attribute__((visibility("default")))
#else
#define GAT_API
#endif

typedef enum gat_status {
	GAT_OK = 0,
	/* The equality engine found no derivation within its bounds. */
	GAT_NOT_PROVEN = 1,
	GAT_ERR_IO = 2,
	GAT_ERR_PARSE = 3,
	/* A theory, telescope, sort or term failed to check. */
	GAT_ERR_CHECK = 4,
	GAT_ERR_INVALID_ARGUMENT = 5,
	GAT_ERR_INTERNAL = 6
} gat_status;

typedef struct gat_theory gat_theory;
typedef struct gat_report gat_report;

typedef struct gat_config {
	size_t fuel;
	size_t max_term_size;
} gat_config;

typedef struct gat_counts {
	size_t sort_decls;
	size_t op_decls;
	size_t sort_axioms;
	size_t term_axioms;
} gat_counts;

enum {
	/* Drop arguments recoverable from later parameters or the result sort. */
	GAT_PRINT_ELIDE = 1
};

GAT_API const char* gat_status_string(gat_status status);
GAT_API void gat_config_default(gat_config* cfg);

GAT_API const char* gat_report_text(const gat_report* report);
/* Empty string when the operation has no JSON form. */
GAT_API const char* gat_report_json(const gat_report* report);
GAT_API gat_status gat_report_status(const gat_report* report);
GAT_API void gat_report_free(gat_report* report);

/* Loading parses and checks the whole theory, following EXTENDS. On failure
 * *out is set to NULL and the report describes the first error found. `cfg` and
 * `report` may be NULL. */
GAT_API gat_status gat_theory_load_file(const char* path, const gat_config* cfg, gat_theory** out,
                                        gat_report** report);
/* Relative EXTENDS paths resolve against `base_dir` (may be NULL), then
 * against the bundled library. */
GAT_API gat_status gat_theory_load_source(const char* text, const char* base_dir, const gat_config* cfg,
                                          gat_theory** out, gat_report** report);
GAT_API gat_status gat_theory_load_library(const char* name, gat_theory** out, gat_report** report);
GAT_API void gat_theory_free(gat_theory* theory);

GAT_API gat_status gat_theory_counts(const gat_theory* theory, gat_counts* out);
GAT_API gat_status gat_theory_print(const gat_theory* theory, int flags, gat_report** report);

/* Fragments are written in file syntax; the theory's notations are accepted.
 * A NULL or empty telescope is the empty telescope. */
GAT_API gat_status gat_sort_of(const gat_theory* theory, const char* telescope, const char* term,
                               const gat_config* cfg, gat_report** report);
GAT_API gat_status gat_eq_sorts(const gat_theory* theory, const char* telescope, const char* a, const char* b,
                                const gat_config* cfg, int with_trace, gat_report** report);
GAT_API gat_status gat_eq_terms(const gat_theory* theory, const char* telescope, const char* m, const char* n,
                                const char* at, const gat_config* cfg, int with_trace, gat_report** report);
GAT_API gat_status gat_normalize(const gat_theory* theory, const char* telescope, const char* term,
                                 const gat_config* cfg, int with_trace, gat_report** report);

/* Generates, evaluates and confirms closed observable terms with the
 * bundled mltt theory. Returns GAT_ERR_CHECK when any term is stuck,
 * ill-typed or unconfirmed. */
GAT_API gat_status gat_canonicity(size_t depth, uint64_t seed, size_t count, const gat_config* cfg,
                                  gat_report** report);

GAT_API size_t gat_library_count(void);
/* NULL when `index` is out of range. */
GAT_API const char* gat_library_name(size_t index);
/* Report text is the path of the bundled file. */
GAT_API gat_status gat_library_path(const char* name, gat_report** report);

#ifdef __cplusplus
}
#endif

#endif
