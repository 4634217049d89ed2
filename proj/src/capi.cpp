#include "cyclerank/cyclerank.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cyclerank/analysis.hpp"
#include "cyclerank/centrality.hpp"
#include "cyclerank/error.hpp"
#include "cyclerank/io.hpp"
#include "cyclerank/spectral.hpp"
#include "cyclerank/walk_oracle.hpp"

using namespace cyclerank;

struct cr_graph {
  std::shared_ptr<const WeightedDigraph> g;
  std::vector<std::string> labels;  // label(i) for every vertex, labeled or not
};

struct cr_family {
  SupportFamily family;
};

struct cr_ranking {
  std::shared_ptr<const WeightedDigraph> g;
  SupportFamily family;
  RankedSupports ranked;
  BoundScorer scorer;
};

struct cr_temporal {
  TemporalDataset ds;
};

struct cr_track {
  TemporalTrack track;
};

struct cr_triad_rule {
  TriadLabelRule rule;
};

struct cr_roc {
  RocCurve roc;
  std::string method;
  std::size_t items = 0;
};

struct cr_oracle {
  std::shared_ptr<const WeightedDigraph> g;
  VertexSet subject;
  OracleReport report;
  RatioTrace trace;
};

namespace {

thread_local std::string last_error;

template <typename F>
cr_status guard(F&& body) noexcept {
  try {
    body();
    last_error.clear();
    return CR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<cr_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
  } catch (...) {
    last_error = "internal error";
  }
  return CR_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

cr_graph* wrap(WeightedDigraph g) {
  auto out = std::make_unique<cr_graph>();
  out->g = std::make_shared<const WeightedDigraph>(std::move(g));
  out->labels.reserve(out->g->size());
  for (Vertex i = 0; i < out->g->size(); ++i) out->labels.push_back(out->g->label(i));
  return out.release();
}

VertexSet support_of(const cr_graph* g, const size_t* support, size_t k) {
  require(support != nullptr || k == 0, "support is NULL");
  std::vector<Vertex> members;
  members.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    if (support[i] >= g->g->size()) {
      throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(support[i]) + " out of range");
    }
    members.push_back(static_cast<Vertex>(support[i]));
  }
  VertexSet s(std::move(members));
  if (s.size() != k) throw Error(ErrorCode::InvalidArgument, "support lists a vertex twice");
  return s;
}

ScoreSpec spec_of(const cr_score_options* o) {
  cr_score_options defaults;
  cr_score_options_init(&defaults);
  if (!o) o = &defaults;
  ScoreSpec spec;
  switch (o->kind) {
    case CR_SCORE_CYCLE: spec.kind = ScoreKind::Cycle; break;
    case CR_SCORE_SIGMA_EIGENVECTOR: spec.kind = ScoreKind::SigmaEigenvector; break;
    case CR_SCORE_SIGMA_RESOLVENT: spec.kind = ScoreKind::SigmaResolvent; break;
    case CR_SCORE_SIGMA_EXPONENTIAL: spec.kind = ScoreKind::SigmaExponential; break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown score kind");
  }
  if (o->has_alpha) spec.alpha = o->alpha;
  spec.alpha_fraction = o->alpha_fraction;
  if (o->r > 0.0) spec.r = o->r;
  if (o->approx_q > 0) spec.approx_q = o->approx_q;
  return spec;
}

ReferenceFamily family_of(cr_family_kind kind, size_t k) {
  switch (kind) {
    case CR_FAMILY_PAIRS: return {FamilyKind::Pairs, 2};
    case CR_FAMILY_TRIADS: return {FamilyKind::ConnectedTriples, 3};
    case CR_FAMILY_CYCLES: return {FamilyKind::CycleSupports, k};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family kind");
}

void write_json(const char* path, const nlohmann::json& j) {
  require(path != nullptr, "path is NULL");
  io::write_file(path, j.dump(2) + "\n");
}

void copy_indices(const std::vector<Vertex>& from, size_t* to, size_t capacity, size_t* count) {
  require(count != nullptr, "count is NULL");
  *count = from.size();
  if (from.size() > capacity) throw Error(ErrorCode::InvalidArgument, "output buffer too small");
  require(to != nullptr || from.empty(), "indices is NULL");
  for (size_t i = 0; i < from.size(); ++i) to[i] = from[i];
}

}  // namespace

extern "C" {

const char* cr_version(void) { return "1.0.0"; }

const char* cr_status_name(cr_status status) {
  if (status == CR_OK) return "Ok";
  if (status == CR_ERR_INTERNAL) return "Internal";
  if (status < CR_ERR_INVALID_ARGUMENT || status > CR_ERR_NON_FINITE_SCORE) return "Unknown";
  return name_of(static_cast<ErrorCode>(status)).data();
}

cr_category cr_status_category(cr_status status) {
  if (status == CR_OK) return CR_CATEGORY_NONE;
  if (status < CR_ERR_INVALID_ARGUMENT || status > CR_ERR_NON_FINITE_SCORE) return CR_CATEGORY_NUMERICAL;
  switch (category_of(static_cast<ErrorCode>(status))) {
    case ErrorCategory::Usage: return CR_CATEGORY_USAGE;
    case ErrorCategory::Data: return CR_CATEGORY_DATA;
    case ErrorCategory::Numerical: return CR_CATEGORY_NUMERICAL;
  }
  return CR_CATEGORY_NUMERICAL;
}

const char* cr_last_error(void) { return last_error.c_str(); }

// ---------------------------------------------------------------------------

cr_status cr_graph_create(size_t n, const double* weights, int directed, const char* const* labels,
                          cr_graph** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    require(weights != nullptr || n == 0, "weights is NULL");
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix w(dim, dim);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = weights[i * n + j];
    }
    std::vector<std::string> names;
    if (labels) {
      for (size_t i = 0; i < n; ++i) {
        require(labels[i] != nullptr, "NULL label");
        names.emplace_back(labels[i]);
      }
    }
    *out = wrap(WeightedDigraph(std::move(w), directed != 0, std::move(names)));
  });
}

cr_status cr_graph_load(const char* path, cr_graph** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = wrap(io::load_graph(path));
  });
}

cr_status cr_graph_save(const cr_graph* g, const char* path, cr_graph_format format) {
  return guard([&] {
    require(g != nullptr && path != nullptr, "NULL argument");
    switch (format) {
      case CR_FORMAT_EDGE_LIST: io::write_file(path, io::format_edge_list(*g->g)); break;
      case CR_FORMAT_FLOW_MATRIX: io::write_file(path, io::format_flow_matrix(*g->g)); break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown graph format");
    }
  });
}

void cr_graph_destroy(cr_graph* g) { delete g; }

size_t cr_graph_size(const cr_graph* g) { return g ? g->g->size() : 0; }

int cr_graph_directed(const cr_graph* g) { return g && g->g->directed() ? 1 : 0; }

double cr_graph_weight(const cr_graph* g, size_t i, size_t j) {
  if (!g || i >= g->g->size() || j >= g->g->size()) return std::numeric_limits<double>::quiet_NaN();
  return g->g->weight(static_cast<Vertex>(i), static_cast<Vertex>(j));
}

const char* cr_graph_label(const cr_graph* g, size_t i) {
  if (!g || i >= g->labels.size()) return nullptr;
  return g->labels[i].c_str();
}

cr_status cr_graph_find_label(const cr_graph* g, const char* label, size_t* index) {
  return guard([&] {
    require(g != nullptr && label != nullptr && index != nullptr, "NULL argument");
    const auto v = g->g->find_label(label);
    if (!v) throw Error(ErrorCode::UnresolvedLabel, std::string("unknown label '") + label + "'");
    *index = *v;
  });
}

cr_status cr_graph_resolve_labels(const cr_graph* g, const char* labels, size_t* indices, size_t capacity,
                                  size_t* count) {
  return guard([&] {
    require(g != nullptr && labels != nullptr, "NULL argument");
    copy_indices(io::resolve_labels(*g->g, labels).members(), indices, capacity, count);
  });
}

// ---------------------------------------------------------------------------

cr_status cr_dominant_eigenvalue(const cr_graph* g, double* lambda) {
  return guard([&] {
    require(g != nullptr && lambda != nullptr, "NULL argument");
    *lambda = dominant_eigenpair(*g->g).lambda;
  });
}

cr_status cr_eta(const cr_graph* g, double* value) {
  return guard([&] {
    require(g != nullptr && value != nullptr, "NULL argument");
    *value = eta(*g->g);
  });
}

cr_status cr_subgraph_centrality(const cr_graph* g, const size_t* support, size_t k, double lambda,
                                 double* value) {
  return guard([&] {
    require(g != nullptr && value != nullptr, "NULL argument");
    *value = subgraph_centrality(*g->g, support_of(g, support, k), lambda).value;
  });
}

cr_status cr_subgraph_centrality_approx(const cr_graph* g, const size_t* support, size_t k, double lambda,
                                        size_t q, double* value) {
  return guard([&] {
    require(g != nullptr && value != nullptr, "NULL argument");
    *value = subgraph_centrality_approx(*g->g, support_of(g, support, k), lambda, q).value;
  });
}

cr_status cr_vertex_centrality(const cr_graph* g, cr_vertex_measure measure, double param, double* out) {
  return guard([&] {
    require(g != nullptr && (out != nullptr || g->g->size() == 0), "NULL argument");
    const WeightedDigraph& graph = *g->g;
    std::vector<double> values;
    switch (measure) {
      case CR_MEASURE_CYCLE: {
        const double lambda = dominant_eigenpair(graph).lambda;
        for (Vertex v = 0; v < graph.size(); ++v) {
          values.push_back(subgraph_centrality(graph, SupportView(&v, 1), lambda).value);
        }
        break;
      }
      case CR_MEASURE_EIGENVECTOR: values = eigenvector_centrality(graph); break;
      case CR_MEASURE_DEGREE: values = degree_centrality(graph); break;
      case CR_MEASURE_RESOLVENT: values = resolvent_centrality(graph, param); break;
      case CR_MEASURE_EXPONENTIAL:
        values = exponential_centrality(graph, param > 0.0 ? param : default_exponential_r(graph));
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown vertex measure");
    }
    std::copy(values.begin(), values.end(), out);
  });
}

// ---------------------------------------------------------------------------

cr_status cr_family_enumerate(const cr_graph* g, cr_family_kind kind, size_t k, cr_family** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "NULL argument");
    *out = new cr_family{enumerate_family(*g->g, family_of(kind, k))};
  });
}

void cr_family_destroy(cr_family* f) { delete f; }

size_t cr_family_size(const cr_family* f) { return f ? f->family.size() : 0; }

size_t cr_family_support_size(const cr_family* f) { return f ? f->family.support_size() : 0; }

cr_status cr_family_support(const cr_family* f, size_t i, size_t* members) {
  return guard([&] {
    require(f != nullptr && members != nullptr, "NULL argument");
    if (i >= f->family.size()) throw Error(ErrorCode::IndexOutOfRange, "support index out of range");
    const SupportView s = f->family[i];
    std::copy(s.begin(), s.end(), members);
  });
}

void cr_score_options_init(cr_score_options* options) {
  if (!options) return;
  options->kind = CR_SCORE_CYCLE;
  options->has_alpha = 0;
  options->alpha = 0.0;
  options->alpha_fraction = ScoreSpec{}.alpha_fraction;
  options->r = 0.0;
  options->approx_q = 0;
}

cr_status cr_rank(const cr_graph* g, const cr_family* f, const cr_score_options* options, size_t top_m,
                  size_t threads, cr_ranking** out) {
  return guard([&] {
    require(g != nullptr && f != nullptr && out != nullptr, "NULL argument");
    for (Vertex v : f->family.flat()) {
      if (v >= g->g->size()) throw Error(ErrorCode::IndexOutOfRange, "family does not belong to this graph");
    }
    BoundScorer scorer = make_scorer(*g->g, spec_of(options));
    RankOptions ro;
    if (top_m > 0) ro.top_m = top_m;
    ro.threads = threads;
    RankedSupports ranked = rank_supports(f->family, scorer.score, ro);
    scorer.score = nullptr;  // holds a raw pointer to the graph
    *out = new cr_ranking{g->g, f->family, std::move(ranked), std::move(scorer)};
  });
}

void cr_ranking_destroy(cr_ranking* r) { delete r; }

size_t cr_ranking_size(const cr_ranking* r) { return r ? r->ranked.size() : 0; }

double cr_ranking_score(const cr_ranking* r, size_t i) {
  if (!r || i >= r->ranked.size()) return std::numeric_limits<double>::quiet_NaN();
  return r->ranked.scores[i];
}

cr_status cr_ranking_support(const cr_ranking* r, size_t i, size_t* members) {
  return guard([&] {
    require(r != nullptr && members != nullptr, "NULL argument");
    if (i >= r->ranked.size()) throw Error(ErrorCode::IndexOutOfRange, "rank out of range");
    const SupportView s = r->ranked[i];
    std::copy(s.begin(), s.end(), members);
  });
}

const char* cr_ranking_method(const cr_ranking* r) { return r ? r->scorer.method.c_str() : ""; }

cr_status cr_ranking_write_csv(const cr_ranking* r, const char* path) {
  return guard([&] {
    require(r != nullptr && path != nullptr, "NULL argument");
    io::write_file(path, io::format_ranking_csv(*r->g, r->ranked, r->scorer.method));
  });
}

cr_status cr_ranking_write_json(const cr_ranking* r, const char* path) {
  return guard([&] {
    require(r != nullptr, "NULL argument");
    write_json(path, io::ranking_json(*r->g, r->family, r->ranked, r->scorer));
  });
}

// ---------------------------------------------------------------------------

cr_status cr_temporal_load(const char* dir, cr_temporal** out) {
  return guard([&] {
    require(dir != nullptr && out != nullptr, "NULL argument");
    *out = new cr_temporal{io::load_temporal(dir)};
  });
}

void cr_temporal_destroy(cr_temporal* t) { delete t; }

size_t cr_temporal_years(const cr_temporal* t) { return t ? t->ds.years.size() : 0; }

int cr_temporal_year(const cr_temporal* t, size_t i) {
  return t && i < t->ds.years.size() ? t->ds.years[i] : 0;
}

cr_status cr_temporal_graph(const cr_temporal* t, size_t i, cr_graph** out) {
  return guard([&] {
    require(t != nullptr && out != nullptr, "NULL argument");
    if (i >= t->ds.graphs.size()) throw Error(ErrorCode::IndexOutOfRange, "year index out of range");
    *out = wrap(t->ds.graphs[i]);
  });
}

cr_status cr_track_run(const cr_temporal* t, const char* subject_labels, cr_family_kind reference, size_t k,
                       size_t threads, cr_track** out) {
  return guard([&] {
    require(t != nullptr && subject_labels != nullptr && out != nullptr, "NULL argument");
    if (t->ds.graphs.empty()) throw Error(ErrorCode::TooFewYears, "no years in dataset");
    const VertexSet subject = io::resolve_labels(t->ds.graphs.front(), subject_labels);
    require(!subject.empty(), "empty subject");
    *out = new cr_track{temporal_track(t->ds, subject, family_of(reference, k), threads)};
  });
}

void cr_track_destroy(cr_track* tr) { delete tr; }

size_t cr_track_rows(const cr_track* tr) { return tr ? tr->track.rows.size() : 0; }

cr_status cr_track_row_get(const cr_track* tr, size_t i, cr_track_row* row) {
  return guard([&] {
    require(tr != nullptr && row != nullptr, "NULL argument");
    if (i >= tr->track.rows.size()) throw Error(ErrorCode::IndexOutOfRange, "row out of range");
    const TrackRow& r = tr->track.rows[i];
    *row = {r.year, r.lambda, r.subject, r.reference_mean, r.reference_std, r.reference_count};
  });
}

double cr_track_ratio(const cr_track* tr) {
  return tr ? tr->track.ratio : std::numeric_limits<double>::quiet_NaN();
}

cr_status cr_track_write_csv(const cr_track* tr, const char* path) {
  return guard([&] {
    require(tr != nullptr && path != nullptr, "NULL argument");
    io::write_file(path, io::format_track_csv(tr->track));
  });
}

cr_status cr_track_write_json(const cr_track* tr, const char* path) {
  return guard([&] {
    require(tr != nullptr, "NULL argument");
    write_json(path, io::track_json(tr->track));
  });
}

// ---------------------------------------------------------------------------

cr_status cr_triad_rule_load(const cr_graph* g, const char* targets_path, const char* immune_path,
                             const char* anchors, cr_triad_rule** out) {
  return guard([&] {
    require(g != nullptr && targets_path != nullptr && out != nullptr, "NULL argument");
    VertexSet targets = io::load_label_set(*g->g, targets_path);
    std::vector<VertexPair> immune;
    if (immune_path) immune = io::load_label_pairs(*g->g, immune_path);
    VertexSet anchor_set = anchors ? io::resolve_labels(*g->g, anchors) : top_eigenvector_anchors(*g->g, 2);
    require(!anchor_set.empty(), "no anchors");
    *out = new cr_triad_rule{make_triad_rule(*g->g, std::move(anchor_set), std::move(targets), immune)};
  });
}

void cr_triad_rule_destroy(cr_triad_rule* rule) { delete rule; }

cr_status cr_triad_rule_anchors(const cr_triad_rule* rule, size_t* indices, size_t capacity, size_t* count) {
  return guard([&] {
    require(rule != nullptr, "NULL argument");
    copy_indices(rule->rule.anchors.members(), indices, capacity, count);
  });
}

cr_status cr_roc_triad_model(const cr_graph* g, const cr_triad_rule* rule, const cr_score_options* options,
                             size_t threads, cr_roc** out) {
  return guard([&] {
    require(g != nullptr && rule != nullptr && out != nullptr, "NULL argument");
    TriadModelResult res = triad_model_roc(*g->g, rule->rule, {spec_of(options), threads});
    *out = new cr_roc{std::move(res.roc), std::move(res.method), res.scores.size()};
  });
}

cr_status cr_roc_degree_model(const cr_graph* g, const cr_triad_rule* rule, cr_roc** out) {
  return guard([&] {
    require(g != nullptr && rule != nullptr && out != nullptr, "NULL argument");
    *out = new cr_roc{degree_model_roc(*g->g, rule->rule.targets), "degree", g->g->size()};
  });
}

cr_status cr_roc_from_scores(const double* scores, const int* truth, size_t n, cr_roc** out) {
  return guard([&] {
    require(out != nullptr && ((scores != nullptr && truth != nullptr) || n == 0), "NULL argument");
    std::vector<bool> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = truth[i] != 0;
    *out = new cr_roc{roc_from_scores(std::span<const double>(scores, n), t), "scores", n};
  });
}

void cr_roc_destroy(cr_roc* roc) { delete roc; }

double cr_roc_auc(const cr_roc* roc) { return roc ? roc->roc.auc : std::numeric_limits<double>::quiet_NaN(); }

double cr_roc_discrimination(const cr_roc* roc) {
  return roc ? roc->roc.discrimination : std::numeric_limits<double>::quiet_NaN();
}

size_t cr_roc_points(const cr_roc* roc) { return roc ? roc->roc.points.size() : 0; }

cr_status cr_roc_point(const cr_roc* roc, size_t i, double* fpr, double* tpr) {
  return guard([&] {
    require(roc != nullptr && fpr != nullptr && tpr != nullptr, "NULL argument");
    if (i >= roc->roc.points.size()) throw Error(ErrorCode::IndexOutOfRange, "point out of range");
    *fpr = roc->roc.points[i].fpr;
    *tpr = roc->roc.points[i].tpr;
  });
}

size_t cr_roc_items(const cr_roc* roc) { return roc ? roc->items : 0; }

const char* cr_roc_method(const cr_roc* roc) { return roc ? roc->method.c_str() : ""; }

cr_status cr_roc_write_csv(const cr_roc* roc, const char* path) {
  return guard([&] {
    require(roc != nullptr && path != nullptr, "NULL argument");
    io::write_file(path, io::format_roc_csv(roc->roc));
  });
}

cr_status cr_roc_write_json(const cr_roc* roc, const char* model, const char* path) {
  return guard([&] {
    require(roc != nullptr, "NULL argument");
    nlohmann::json j = io::roc_json(roc->roc, model ? model : roc->method.c_str(), roc->method);
    j["items"] = roc->items;
    write_json(path, j);
  });
}

// ---------------------------------------------------------------------------

cr_status cr_oracle_run(const cr_graph* g, const char* subject_labels, size_t order, double tol, cr_oracle** out) {
  return guard([&] {
    require(g != nullptr && subject_labels != nullptr && out != nullptr, "NULL argument");
    auto o = std::make_unique<cr_oracle>();
    o->g = g->g;
    o->subject = io::resolve_labels(*g->g, subject_labels);
    o->report = ratio_convergence_check(*g->g, o->subject, order, tol);
    o->trace = viennot_ratio(*g->g, o->subject, order);
    *out = o.release();
  });
}

void cr_oracle_destroy(cr_oracle* o) { delete o; }

int cr_oracle_pass(const cr_oracle* o) { return o && o->report.pass ? 1 : 0; }

double cr_oracle_target(const cr_oracle* o) {
  return o ? o->report.target : std::numeric_limits<double>::quiet_NaN();
}

double cr_oracle_cesaro_mean(const cr_oracle* o) {
  return o ? o->report.cesaro_mean : std::numeric_limits<double>::quiet_NaN();
}

double cr_oracle_abs_error(const cr_oracle* o) {
  return o ? o->report.abs_error : std::numeric_limits<double>::quiet_NaN();
}

cr_status cr_oracle_write_json(const cr_oracle* o, const char* path) {
  return guard([&] {
    require(o != nullptr, "NULL argument");
    write_json(path, io::oracle_json(*o->g, o->subject, o->report, &o->trace));
  });
}

// ---------------------------------------------------------------------------

cr_status cr_spectrum_write_json(const cr_graph* g, const char* path) {
  return guard([&] {
    require(g != nullptr, "NULL argument");
    write_json(path, io::spectrum_json(*g->g));
  });
}

}  // extern "C"
