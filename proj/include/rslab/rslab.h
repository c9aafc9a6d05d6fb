/* rslab: sparse random relational structures, dimension calculus and
 * scaling experiments. C interface.
 *
 * Objects are opaque handles released with their *_free function. Functions
 * return an rslab_status; on failure rslab_last_error() describes the problem
 * (per thread, valid until the next call on that thread). Strings returned
 * through char** parameters are owned by the caller and released with
 * rslab_string_free. Vertex subsets are passed as arrays of vertex indices in
 * any order without repetitions. */
#ifndef RSLAB_RSLAB_H
#define RSLAB_RSLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(RSLAB_BUILDING_LIBRARY)
#define RSLAB_API __attribute__((visibility("default")))
#else
#define RSLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rslab_status {
  RSLAB_OK = 0,
  RSLAB_ERR_INVALID_ARGUMENT = 1,
  RSLAB_ERR_PARSE = 2,
  RSLAB_ERR_PRECONDITION = 3,
  RSLAB_ERR_LIMIT = 4,
  RSLAB_ERR_INTERNAL = 5
} rslab_status;

typedef enum rslab_sign { RSLAB_NEGATIVE = -1, RSLAB_ZERO = 0, RSLAB_POSITIVE = 1 } rslab_sign;

typedef struct rslab_signature rslab_signature;
typedef struct rslab_structure rslab_structure;
typedef struct rslab_pattern rslab_pattern;
typedef struct rslab_report rslab_report;

RSLAB_API const char* rslab_last_error(void);
RSLAB_API const char* rslab_version(void);
RSLAB_API void rslab_string_free(char* s);

/* Signatures: {"independence_mode": bool, "relations": [{"name", "arity",
 * "alpha", "gamma"}, ...]}. */
RSLAB_API rslab_status rslab_signature_parse(const char* json, rslab_signature** out);
RSLAB_API void rslab_signature_free(rslab_signature* sig);

/* Structures: {"n": int, "edges": {name: [[v, ...], ...]}}. */
RSLAB_API rslab_status rslab_structure_parse(const rslab_signature* sig, const char* json, rslab_structure** out);
/* Canonical JSON text. */
RSLAB_API rslab_status rslab_structure_serialize(const rslab_structure* s, char** out);
RSLAB_API uint32_t rslab_structure_size(const rslab_structure* s);
RSLAB_API void rslab_structure_free(rslab_structure* s);

/* Extension patterns: {"structure": <structure>, "base": [v, ...]}. */
RSLAB_API rslab_status rslab_pattern_parse(const rslab_signature* sig, const char* json, rslab_pattern** out);
/* JSON with v, e_rel, delta_rel, gamma_prod and the strong / intrinsic /
 * primitive verdicts. */
RSLAB_API rslab_status rslab_pattern_describe(const rslab_pattern* p, char** out);
RSLAB_API void rslab_pattern_free(rslab_pattern* p);

/* Draw from P_n; deterministic in (seed, trial). */
RSLAB_API rslab_status rslab_sample(const rslab_signature* sig, uint32_t n, uint64_t seed, uint64_t trial,
                                    rslab_structure** out);
/* ln P_n(s) with n = size of s. */
RSLAB_API rslab_status rslab_log_prob(const rslab_structure* s, double* out);

/* delta of the substructure induced on `subset` (NULL/0 = whole structure), as
 * JSON {"c0", "coeffs", "value"}; the sign is stored in *sign when non-null. */
RSLAB_API rslab_status rslab_delta(const rslab_structure* s, const uint32_t* subset, size_t subset_len, char** out,
                                   rslab_sign* sign);
/* Minimum delta over supersets of A adding at most cap vertices. */
RSLAB_API rslab_status rslab_d_cap(const rslab_structure* s, const uint32_t* a, size_t a_len, size_t cap, char** out);
/* cl^m(A). The result array is malloc'ed; free it with rslab_vertices_free. */
RSLAB_API rslab_status rslab_closure(const rslab_structure* s, const uint32_t* a, size_t a_len, size_t m,
                                     uint32_t** out, size_t* out_len);
RSLAB_API void rslab_vertices_free(uint32_t* v);
/* delta >= 0 on every subset (of at most max_size vertices when nonzero). */
RSLAB_API rslab_status rslab_in_k0_plus(const rslab_structure* s, size_t max_size, int* out);

typedef struct rslab_experiment_config {
  const uint32_t* n_grid;
  size_t n_grid_len;
  size_t trials;
  uint64_t seed;
  unsigned threads;
  size_t embedding_cap;
  double c1;
  size_t m;
} rslab_experiment_config;

/* Defaults: empty grid, 20 trials, seed 0, 1 thread, cap 200, c1 10, m 2. */
RSLAB_API void rslab_experiment_config_init(rslab_experiment_config* cfg);

RSLAB_API rslab_status rslab_ext_stats(const rslab_pattern* p, const rslab_experiment_config* cfg, rslab_report** out);
RSLAB_API rslab_status rslab_rare_substructure(const rslab_structure* b, const rslab_experiment_config* cfg,
                                               rslab_report** out);
RSLAB_API rslab_status rslab_empty_closure(const rslab_signature* sig, const rslab_experiment_config* cfg,
                                           rslab_report** out);
RSLAB_API rslab_status rslab_zero_one(const rslab_pattern* p, const rslab_experiment_config* cfg, rslab_report** out);

typedef struct rslab_qe_config {
  const size_t* ells;
  size_t ells_len;
  size_t depth;
  size_t tuple_length;
  size_t pairs;
  uint64_t seed;
  int same_tuple;
} rslab_qe_config;

/* Defaults: ells {1, 2}, depth 1, tuple length 1, 50 pairs, seed 0. */
RSLAB_API void rslab_qe_config_init(rslab_qe_config* cfg);
RSLAB_API rslab_status rslab_qe_probe(const rslab_structure* g1, const rslab_structure* g2, const rslab_qe_config* cfg,
                                      rslab_report** out);

/* Report output; wall-clock columns are included only when include_timing is
 * nonzero, otherwise equal runs give identical text. */
RSLAB_API rslab_status rslab_report_json(const rslab_report* r, int include_timing, char** out);
RSLAB_API rslab_status rslab_report_csv(const rslab_report* r, int include_timing, char** out);
/* Fitted log-log slope; *valid is 0 when fewer than two usable rows. */
RSLAB_API rslab_status rslab_report_slope(const rslab_report* r, double* slope, double* residual, int* valid);
RSLAB_API void rslab_report_free(rslab_report* r);

/* Builds a generic chain and returns its JSON log, including a "validation"
 * member listing problems found when re-checking the certificate (subsets of
 * at most k0_cap vertices for the hereditary delta check, 0 = all). */
RSLAB_API rslab_status rslab_generic_build(const rslab_signature* sig, uint32_t size_bound, uint32_t v_max,
                                           uint32_t a_max, uint64_t seed, size_t k0_cap, char** out);

#ifdef __cplusplus
}
#endif

#endif
