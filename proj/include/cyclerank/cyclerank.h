#ifndef CYCLERANK_H
#define CYCLERANK_H

/* C interface to the cyclerank library.
 *
 * Every fallible call returns a cr_status; CR_OK is 0. On failure the
 * calling thread's cr_last_error() holds a one-line message. Output handles
 * are written only on success and must be released with the matching
 * *_destroy function (which accepts NULL). Vertex indices are 0-based.
 */

#include <stddef.h>

#if defined(_WIN32)
#  define CR_API __declspec(dllexport)
#elif defined(CYCLERANK_BUILDING)
#  define CR_API __attribute__((visibility("default")))
#else
#  define CR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cr_status {
  CR_OK = 0,
  CR_ERR_INVALID_ARGUMENT = 1,
  CR_ERR_INDEX_OUT_OF_RANGE,
  CR_ERR_DUPLICATE_EDGE,
  CR_ERR_NEGATIVE_WEIGHT,
  CR_ERR_NOT_SYMMETRIC,
  CR_ERR_PARSE,
  CR_ERR_UNRESOLVED_LABEL,
  CR_ERR_IO,
  CR_ERR_LABEL_MISMATCH_ACROSS_YEARS,
  CR_ERR_NON_SQUARE_MATRIX,
  CR_ERR_TOO_FEW_YEARS,
  CR_ERR_INCONSISTENT_LABELS,
  CR_ERR_DEGENERATE_TRUTH,
  CR_ERR_UNSUPPORTED_K,
  CR_ERR_ZERO_SPECTRAL_RADIUS,
  CR_ERR_NO_CONVERGENCE,
  CR_ERR_SOLVER_FAILURE,
  CR_ERR_DEGENERATE_DOMINANT_EIGENVALUE,
  CR_ERR_LAMBDA_MISMATCH,
  CR_ERR_OUT_OF_BOUNDS,
  CR_ERR_ALPHA_TOO_LARGE,
  CR_ERR_OVERFLOW,
  CR_ERR_INCONCLUSIVE_SPECTRAL_GAP,
  CR_ERR_NON_FINITE_SCORE,
  CR_ERR_INTERNAL = 100
} cr_status;

typedef enum cr_category {
  CR_CATEGORY_NONE = 0,
  CR_CATEGORY_USAGE,
  CR_CATEGORY_DATA,
  CR_CATEGORY_NUMERICAL
} cr_category;

CR_API const char* cr_version(void);
CR_API const char* cr_status_name(cr_status status);
CR_API cr_category cr_status_category(cr_status status);
/* Message of the last failure on this thread; "" if none. */
CR_API const char* cr_last_error(void);

/* ------------------------------------------------------------------------ */
/* Graphs */

typedef struct cr_graph cr_graph;

typedef enum cr_graph_format { CR_FORMAT_EDGE_LIST = 0, CR_FORMAT_FLOW_MATRIX = 1 } cr_graph_format;

/* weights: n*n row-major, weights[i*n+j] is the edge i->j. labels may be NULL. */
CR_API cr_status cr_graph_create(size_t n, const double* weights, int directed, const char* const* labels,
                                 cr_graph** out);
/* Flow matrix if the first cell is blank, edge list otherwise. */
CR_API cr_status cr_graph_load(const char* path, cr_graph** out);
CR_API cr_status cr_graph_save(const cr_graph* g, const char* path, cr_graph_format format);
CR_API void cr_graph_destroy(cr_graph* g);

CR_API size_t cr_graph_size(const cr_graph* g);
CR_API int cr_graph_directed(const cr_graph* g);
CR_API double cr_graph_weight(const cr_graph* g, size_t i, size_t j);
/* Owned by the graph; valid until cr_graph_destroy. NULL if i is out of range. */
CR_API const char* cr_graph_label(const cr_graph* g, size_t i);
CR_API cr_status cr_graph_find_label(const cr_graph* g, const char* label, size_t* index);
/* Resolves "a,b,c" into sorted, distinct indices. *count receives the number
 * found; indices is filled when capacity suffices, else CR_ERR_INVALID_ARGUMENT. */
CR_API cr_status cr_graph_resolve_labels(const cr_graph* g, const char* labels, size_t* indices, size_t capacity,
                                         size_t* count);

/* ------------------------------------------------------------------------ */
/* Spectral quantities and centralities */

CR_API cr_status cr_dominant_eigenvalue(const cr_graph* g, double* lambda);
CR_API cr_status cr_eta(const cr_graph* g, double* eta);

/* det(I - A_{G\s}/lambda). support: k distinct indices in any order. */
CR_API cr_status cr_subgraph_centrality(const cr_graph* g, const size_t* support, size_t k, double lambda,
                                        double* value);
/* Product over the q most dominant eigenvalues of A_{G\s}. */
CR_API cr_status cr_subgraph_centrality_approx(const cr_graph* g, const size_t* support, size_t k, double lambda,
                                               size_t q, double* value);

typedef enum cr_vertex_measure {
  CR_MEASURE_CYCLE = 0,   /* c({i}) */
  CR_MEASURE_EIGENVECTOR, /* Perron vector, unit 2-norm */
  CR_MEASURE_DEGREE,      /* weighted total degree */
  CR_MEASURE_RESOLVENT,   /* (I - param A)^{-1} 1 */
  CR_MEASURE_EXPONENTIAL  /* exp(A/param) 1; param <= 0 picks r automatically */
} cr_vertex_measure;

/* out must hold cr_graph_size(g) values. */
CR_API cr_status cr_vertex_centrality(const cr_graph* g, cr_vertex_measure measure, double param, double* out);

/* ------------------------------------------------------------------------ */
/* Support families and ranking */

typedef enum cr_family_kind {
  CR_FAMILY_PAIRS = 0,
  CR_FAMILY_TRIADS,  /* connected 3-subsets */
  CR_FAMILY_CYCLES   /* supports of k-cycles, k in 3..5 */
} cr_family_kind;

typedef struct cr_family cr_family;

/* k is ignored except for CR_FAMILY_CYCLES. */
CR_API cr_status cr_family_enumerate(const cr_graph* g, cr_family_kind kind, size_t k, cr_family** out);
CR_API void cr_family_destroy(cr_family* f);
CR_API size_t cr_family_size(const cr_family* f);
CR_API size_t cr_family_support_size(const cr_family* f);
/* Writes cr_family_support_size(f) ascending indices. */
CR_API cr_status cr_family_support(const cr_family* f, size_t i, size_t* members);

typedef enum cr_score_kind {
  CR_SCORE_CYCLE = 0,
  CR_SCORE_SIGMA_EIGENVECTOR,
  CR_SCORE_SIGMA_RESOLVENT,
  CR_SCORE_SIGMA_EXPONENTIAL
} cr_score_kind;

typedef struct cr_score_options {
  cr_score_kind kind;
  int has_alpha;          /* resolvent: use alpha as given */
  double alpha;
  double alpha_fraction;  /* resolvent without alpha: alpha = alpha_fraction / lambda */
  double r;               /* exponential divisor; <= 0 picks it automatically */
  size_t approx_q;        /* cycle score: 0 exact, else keep q eigenvalues */
} cr_score_options;

CR_API void cr_score_options_init(cr_score_options* options);

typedef struct cr_ranking cr_ranking;

/* top_m = 0 keeps every support. threads = 0 reads CYCLERANK_THREADS, then
 * the hardware concurrency. Output does not depend on the thread count. */
CR_API cr_status cr_rank(const cr_graph* g, const cr_family* f, const cr_score_options* options, size_t top_m,
                         size_t threads, cr_ranking** out);
CR_API void cr_ranking_destroy(cr_ranking* r);
CR_API size_t cr_ranking_size(const cr_ranking* r);
CR_API double cr_ranking_score(const cr_ranking* r, size_t i);
CR_API cr_status cr_ranking_support(const cr_ranking* r, size_t i, size_t* members);
CR_API const char* cr_ranking_method(const cr_ranking* r);
CR_API cr_status cr_ranking_write_csv(const cr_ranking* r, const char* path);
CR_API cr_status cr_ranking_write_json(const cr_ranking* r, const char* path);

/* ------------------------------------------------------------------------ */
/* Temporal tracking */

typedef struct cr_temporal cr_temporal;
typedef struct cr_track cr_track;

CR_API cr_status cr_temporal_load(const char* dir, cr_temporal** out);
CR_API void cr_temporal_destroy(cr_temporal* t);
CR_API size_t cr_temporal_years(const cr_temporal* t);
CR_API int cr_temporal_year(const cr_temporal* t, size_t i);
/* A new graph handle for year i. */
CR_API cr_status cr_temporal_graph(const cr_temporal* t, size_t i, cr_graph** out);

typedef struct cr_track_row {
  int year;
  double lambda;
  double subject;
  double reference_mean;
  double reference_std;
  size_t reference_count;
} cr_track_row;

CR_API cr_status cr_track_run(const cr_temporal* t, const char* subject_labels, cr_family_kind reference,
                              size_t k, size_t threads, cr_track** out);
CR_API void cr_track_destroy(cr_track* tr);
CR_API size_t cr_track_rows(const cr_track* tr);
CR_API cr_status cr_track_row_get(const cr_track* tr, size_t i, cr_track_row* row);
/* subject time mean over reference time mean; NaN when the latter is 0. */
CR_API double cr_track_ratio(const cr_track* tr);
CR_API cr_status cr_track_write_csv(const cr_track* tr, const char* path);
CR_API cr_status cr_track_write_json(const cr_track* tr, const char* path);

/* ------------------------------------------------------------------------ */
/* ROC evaluation */

typedef struct cr_triad_rule cr_triad_rule;
typedef struct cr_roc cr_roc;

/* targets_path: label set. immune_path: label pairs, may be NULL.
 * anchors: comma-separated labels, or NULL for the two vertices of largest
 * eigenvector centrality. */
CR_API cr_status cr_triad_rule_load(const cr_graph* g, const char* targets_path, const char* immune_path,
                                    const char* anchors, cr_triad_rule** out);
CR_API void cr_triad_rule_destroy(cr_triad_rule* rule);
/* Writes the anchor indices; *count receives how many there are. */
CR_API cr_status cr_triad_rule_anchors(const cr_triad_rule* rule, size_t* indices, size_t capacity, size_t* count);

CR_API cr_status cr_roc_triad_model(const cr_graph* g, const cr_triad_rule* rule, const cr_score_options* options,
                                    size_t threads, cr_roc** out);
/* Vertices ranked by unweighted degree against the rule's targets. */
CR_API cr_status cr_roc_degree_model(const cr_graph* g, const cr_triad_rule* rule, cr_roc** out);
/* truth[i] nonzero marks a positive item. */
CR_API cr_status cr_roc_from_scores(const double* scores, const int* truth, size_t n, cr_roc** out);
CR_API void cr_roc_destroy(cr_roc* roc);
CR_API double cr_roc_auc(const cr_roc* roc);
CR_API double cr_roc_discrimination(const cr_roc* roc);
CR_API size_t cr_roc_points(const cr_roc* roc);
CR_API cr_status cr_roc_point(const cr_roc* roc, size_t i, double* fpr, double* tpr);
/* Number of scored items (labeled triads or vertices). */
CR_API size_t cr_roc_items(const cr_roc* roc);
CR_API const char* cr_roc_method(const cr_roc* roc);
CR_API cr_status cr_roc_write_csv(const cr_roc* roc, const char* path);
CR_API cr_status cr_roc_write_json(const cr_roc* roc, const char* model, const char* path);

/* ------------------------------------------------------------------------ */
/* Series oracle */

typedef struct cr_oracle cr_oracle;

CR_API cr_status cr_oracle_run(const cr_graph* g, const char* subject_labels, size_t order, double tol,
                               cr_oracle** out);
CR_API void cr_oracle_destroy(cr_oracle* o);
CR_API int cr_oracle_pass(const cr_oracle* o);
CR_API double cr_oracle_target(const cr_oracle* o);
CR_API double cr_oracle_cesaro_mean(const cr_oracle* o);
CR_API double cr_oracle_abs_error(const cr_oracle* o);
CR_API cr_status cr_oracle_write_json(const cr_oracle* o, const char* path);

/* ------------------------------------------------------------------------ */

/* lambda, eta, eigenvector centrality and the sorted spectrum as JSON. */
CR_API cr_status cr_spectrum_write_json(const cr_graph* g, const char* path);

#ifdef __cplusplus
}
#endif

#endif
