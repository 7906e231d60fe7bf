/* sparsealign.h — C API of the SparseAlign shared library.
 *
 * SparseAlign derives a consensus model ranking from sparse human
 * evaluation data and scores how well candidate automated judges align
 * with it. The library is a C++ core exposed through this flat C
 * interface: opaque handles, integer status codes, and caller-freed
 * strings, so it can be loaded from C, Python (ctypes/cffi), or any FFI.
 *
 * Conventions:
 *   - Every fallible call returns sa_status; SA_OK is 0.
 *   - On failure, sa_last_error() returns a thread-local message
 *     describing the most recent failure on the calling thread.
 *   - Objects returned through out-parameters are owned by the caller and
 *     released with the matching sa_*_free function. Strings returned
 *     through char** are released with sa_string_free.
 *   - All text is UTF-8.
 */

#ifndef SPARSEALIGN_H
#define SPARSEALIGN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SPARSEALIGN_BUILD)
#    define SPARSEALIGN_API __declspec(dllexport)
#  else
#    define SPARSEALIGN_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define SPARSEALIGN_API __attribute__((visibility("default")))
#else
#  define SPARSEALIGN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sa_status {
    SA_OK = 0,
    SA_ERR_INVALID_ARGUMENT = 1, /* null pointer, zero-length buffer, ... */
    SA_ERR_PARSE = 2,            /* malformed input bytes */
    SA_ERR_VALIDATION = 3,       /* contract violation in well-formed input */
    SA_ERR_CONFIG = 4            /* configuration outside its domain */
} sa_status;

typedef enum sa_std_estimator {
    SA_STD_SAMPLE = 0,    /* n-1 denominator (default) */
    SA_STD_POPULATION = 1 /* n denominator */
} sa_std_estimator;

typedef enum sa_boundary {
    SA_BOUNDARY_LTE = 0, /* difference == delta still ties (default) */
    SA_BOUNDARY_LT = 1
} sa_boundary;

/* Plain configuration block shared by all entry points. Initialize with
 * sa_config_default, then override fields as needed. Defaults: scale
 * [1, 7], alpha 0.5, delta factor 1/6, sample std, lte boundary,
 * fraction 0.1, seed 0. */
typedef struct sa_config {
    int scale_min;
    int scale_max;
    double alpha;          /* rank-vs-score blend weight, in [0, 1] */
    double delta_factor;   /* tie threshold = factor * median std */
    int std_estimator;     /* sa_std_estimator */
    int boundary;          /* sa_boundary */
    int judge_strict_order; /* nonzero: judge ranking without tie groups */
    double fraction;       /* human-close perturbation share, in [0, 1] */
    unsigned long long seed;
} sa_config;

typedef struct sa_human_table sa_human_table;
typedef struct sa_judge_table sa_judge_table;
typedef struct sa_ranking sa_ranking;
typedef struct sa_report sa_report;

SPARSEALIGN_API const char* sa_version(void);
/* Identifier of the seeded draw procedure used by the simulated judges. */
SPARSEALIGN_API const char* sa_rng_algorithm(void);
/* Message for the calling thread's most recent failure; empty if none. */
SPARSEALIGN_API const char* sa_last_error(void);

SPARSEALIGN_API void sa_config_default(sa_config* config);

/* --- tables ------------------------------------------------------------ */

/* Parses human CSV (`model_id,sample_id,annotator_id,score`). */
SPARSEALIGN_API sa_status sa_human_table_parse(const char* data, size_t size,
                                               const sa_config* config,
                                               sa_human_table** out);
SPARSEALIGN_API void sa_human_table_free(sa_human_table* table);
SPARSEALIGN_API size_t sa_human_table_records(const sa_human_table* table);
SPARSEALIGN_API size_t sa_human_table_models(const sa_human_table* table);
SPARSEALIGN_API sa_status sa_human_table_to_csv(const sa_human_table* table,
                                                char** out);

/* Parses judge CSV (`judge_id,model_id,sample_id,score`; single judge). */
SPARSEALIGN_API sa_status sa_judge_table_parse(const char* data, size_t size,
                                               const sa_config* config,
                                               sa_judge_table** out);
SPARSEALIGN_API void sa_judge_table_free(sa_judge_table* table);
SPARSEALIGN_API const char* sa_judge_table_id(const sa_judge_table* table);
SPARSEALIGN_API size_t sa_judge_table_records(const sa_judge_table* table);
SPARSEALIGN_API sa_status sa_judge_table_to_csv(const sa_judge_table* table,
                                                char** out);

/* Succeeds iff the judge covers every (model, sample) pair of the human
 * table and the scales match. */
SPARSEALIGN_API sa_status sa_validate_coverage(const sa_human_table* human,
                                               const sa_judge_table* judge);

/* --- consensus ranking -------------------------------------------------- */

SPARSEALIGN_API sa_status sa_human_rank(const sa_human_table* human,
                                        const sa_config* config, sa_ranking** out);
SPARSEALIGN_API void sa_ranking_free(sa_ranking* ranking);
SPARSEALIGN_API double sa_ranking_delta(const sa_ranking* ranking);
SPARSEALIGN_API sa_status sa_ranking_to_json(const sa_ranking* ranking, char** out);
SPARSEALIGN_API sa_status sa_ranking_to_markdown(const sa_ranking* ranking,
                                                 char** out);

/* --- judge alignment ---------------------------------------------------- */

/* Validates coverage, ranks the judge, and computes the alignment report
 * against the fixed human ranking. */
SPARSEALIGN_API sa_status sa_evaluate_judge(const sa_ranking* ranking,
                                            const sa_human_table* human,
                                            const sa_judge_table* judge,
                                            const sa_config* config,
                                            sa_report** out);
SPARSEALIGN_API void sa_report_free(sa_report* report);
SPARSEALIGN_API const char* sa_report_judge_id(const sa_report* report);
SPARSEALIGN_API double sa_report_eps_rank(const sa_report* report);
SPARSEALIGN_API double sa_report_eps_score(const sa_report* report);
SPARSEALIGN_API double sa_report_eps_total(const sa_report* report);
SPARSEALIGN_API double sa_report_align_score(const sa_report* report);

/* Serializers take an array of reports and emit them sorted by align
 * score descending, judge id ascending. */
SPARSEALIGN_API sa_status sa_reports_to_json(const sa_report* const* reports,
                                             size_t count, char** out);
SPARSEALIGN_API sa_status sa_reports_to_markdown(const sa_report* const* reports,
                                                 size_t count, char** out);
SPARSEALIGN_API sa_status sa_reports_to_csv(const sa_report* const* reports,
                                            size_t count, char** out);

/* --- simulated judges --------------------------------------------------- */

/* Uniform random judge over the human table's (model, sample) universe. */
SPARSEALIGN_API sa_status sa_simulate_random(const sa_human_table* human,
                                             const sa_config* config,
                                             sa_judge_table** out);
/* Human-close judge: config->fraction of each model column shifted +/-1. */
SPARSEALIGN_API sa_status sa_simulate_human_close(const sa_human_table* human,
                                                  const sa_config* config,
                                                  sa_judge_table** out);

SPARSEALIGN_API void sa_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPARSEALIGN_H */
