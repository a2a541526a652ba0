/*
 * C interface to the cluster-consensus toolkit.
 *
 * Every function returns a ccons_status; on failure a message is available
 * from ccons_last_error() until the next call on the same thread. Strings
 * handed out by the library are NUL-terminated and released with
 * ccons_string_free(). Handles are immutable once created and may be shared
 * between threads for concurrent reads.
 */
#ifndef CCONS_CCONS_H
#define CCONS_CCONS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CCONS_BUILDING_LIBRARY)
#    define CCONS_API __declspec(dllexport)
#  else
#    define CCONS_API __declspec(dllimport)
#  endif
#else
#  define CCONS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccons_status {
  CCONS_OK = 0,
  CCONS_ERR_NEGATIVE_ENTRY = 1,
  CCONS_ERR_ROW_SUM_VIOLATION = 2,
  CCONS_ERR_NON_SQUARE = 3,
  CCONS_ERR_NON_FINITE = 4,
  CCONS_ERR_OVERLAP = 5,
  CCONS_ERR_NOT_COVERING = 6,
  CCONS_ERR_EMPTY_CLUSTER = 7,
  CCONS_ERR_INDEX_OUT_OF_RANGE = 8,
  CCONS_ERR_DIMENSION_MISMATCH = 9,
  CCONS_ERR_DIMENSION_TOO_LARGE = 10,
  CCONS_ERR_EMPTY_SEQUENCE = 11,
  CCONS_ERR_STATE_BUDGET_EXCEEDED = 12,
  CCONS_ERR_INTERNAL_INCONSISTENCY = 13,
  CCONS_ERR_UNKNOWN_MATRIX_NAME = 14,
  CCONS_ERR_COMMON_INFLUENCE_VIOLATED = 15,
  CCONS_ERR_SUPPORT_MISMATCH = 16,
  CCONS_ERR_INVALID_POLICY = 17,
  CCONS_ERR_PARSE = 18,
  CCONS_ERR_INVALID_ARGUMENT = 19,
  CCONS_ERR_NO_WITNESS = 100,
  CCONS_ERR_UNEXPECTED = 101
} ccons_status;

typedef enum ccons_verdict {
  CCONS_CONSENSUS_SET = 0,
  CCONS_NOT_CONSENSUS_SET = 1,
  CCONS_NECESSARY_ONLY_PASSED = 2
} ccons_verdict;

typedef enum ccons_policy {
  CCONS_POLICY_PERIODIC = 0,
  CCONS_POLICY_RANDOM = 1,
  CCONS_POLICY_FIXED = 2,
  CCONS_POLICY_WITNESS = 3
} ccons_policy;

typedef enum ccons_profile {
  CCONS_PROFILE_MIXED = 0,
  CCONS_PROFILE_A123 = 1,
  CCONS_PROFILE_A14 = 2
} ccons_profile;

typedef struct ccons_matrix_set ccons_matrix_set;
typedef struct ccons_decision ccons_decision;

typedef struct ccons_decide_options {
  int dimension_cap;            /* default 20 */
  uint64_t state_budget;        /* default 5000000 */
  int necessary_only;           /* never report ConsensusSet */
  int skip_liveness_fixpoint;   /* mutation hook, tests only */
} ccons_decide_options;

typedef struct ccons_simulate_options {
  ccons_policy policy;          /* default periodic over all matrices */
  int horizon;                  /* default 200 */
  double eps;                   /* default 1e-6 */
  uint64_t seed;                /* random policy */
  const char* const* sequence;  /* fixed/periodic; NULL means all matrices */
  size_t sequence_length;
  const double* x0;             /* NULL: ramp i/(n-1), or the witness state */
  size_t x0_length;
  const char* witness_json;     /* required for the witness policy */
} ccons_simulate_options;

typedef struct ccons_oracle_options {
  int cases;                    /* default 100 */
  int n;                        /* default 4, at most 5 */
  int clusters;                 /* default 2; 0 draws K per case */
  int max_matrices;             /* default 3 */
  uint64_t seed;                /* default 1 */
  ccons_profile profile;        /* default mixed */
  int horizon;                  /* default 200 */
  double eps;                   /* default 1e-6 */
  int inject_no_fixpoint;       /* mutation test: disable dead-state removal */
} ccons_oracle_options;

CCONS_API const char* ccons_last_error(void);
CCONS_API const char* ccons_status_name(ccons_status status);
CCONS_API void ccons_string_free(char* s);

CCONS_API void ccons_decide_options_init(ccons_decide_options* options);
CCONS_API void ccons_simulate_options_init(ccons_simulate_options* options);
CCONS_API void ccons_oracle_options_init(ccons_oracle_options* options);

/* Parses and validates a matrix-set JSON document. */
CCONS_API ccons_status ccons_matrix_set_from_json(const char* json, ccons_matrix_set** out);
CCONS_API void ccons_matrix_set_free(ccons_matrix_set* set);
CCONS_API ccons_status ccons_matrix_set_dimension(const ccons_matrix_set* set, int* n);
CCONS_API ccons_status ccons_matrix_set_count(const ccons_matrix_set* set, int* count);

/* Assumption report plus per-matrix coefficients, as JSON. */
CCONS_API ccons_status ccons_assumption_report(const ccons_matrix_set* set, char** json_out);

/* options may be NULL for defaults. */
CCONS_API ccons_status ccons_decide(const ccons_matrix_set* set, const ccons_decide_options* options,
                                    ccons_decision** out);
CCONS_API void ccons_decision_free(ccons_decision* decision);
CCONS_API ccons_status ccons_decision_verdict(const ccons_decision* decision, ccons_verdict* out);
CCONS_API ccons_status ccons_decision_witness_length(const ccons_decision* decision, size_t* out);
/* Verdict, regime, statistics and (if any) the witness. */
CCONS_API ccons_status ccons_decision_json(const ccons_decision* decision, char** json_out);
/* CCONS_ERR_NO_WITNESS unless the verdict is NotConsensusSet. */
CCONS_API ccons_status ccons_decision_witness_json(const ccons_decision* decision, char** json_out);

/* Writes 1 to *valid for an accepted witness. report_out (optional) receives
 * {"valid", "condition", "detail"}. */
CCONS_API ccons_status ccons_verify_witness(const ccons_matrix_set* set, const char* witness_json,
                                            int* valid, char** report_out);

/* csv_out and profile_out are optional. */
CCONS_API ccons_status ccons_simulate(const ccons_matrix_set* set, const ccons_simulate_options* options,
                                      char** csv_out, char** profile_out);

CCONS_API ccons_status ccons_oracle_run(const ccons_oracle_options* options, char** summary_out,
                                        int* disagreements);

/* Graphviz text for one matrix's support graph, or its condensation. */
CCONS_API ccons_status ccons_graph_dot(const ccons_matrix_set* set, const char* matrix_name,
                                       int condensation, char** dot_out);

#ifdef __cplusplus
}
#endif

#endif /* CCONS_CCONS_H */
