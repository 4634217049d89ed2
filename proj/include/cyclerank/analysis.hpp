#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclerank/graph.hpp"
#include "cyclerank/subgraph_enum.hpp"

namespace cyclerank {

// ---------------------------------------------------------------------------
// Support scoring

enum class ScoreKind { Cycle, SigmaEigenvector, SigmaResolvent, SigmaExponential };

struct ScoreSpec {
  ScoreKind kind = ScoreKind::Cycle;
  // Resolvent: absolute alpha when set, otherwise alpha_fraction / lambda.
  std::optional<double> alpha;
  double alpha_fraction = 0.85;
  // Exponential: divisor r; unset picks default_exponential_r.
  std::optional<double> r;
  // Cycle: retain only the q most dominant eigenvalues.
  std::optional<std::size_t> approx_q;
};

struct BoundScorer {
  SupportScorer score;
  std::string method;  // "exact", "approx(q=3)", "sigma-eig", ...
  double lambda = 0.0;
  double alpha = 0.0;  // resolvent only
  double r = 0.0;      // exponential only
};

// Precomputes lambda or per-vertex baseline scores once, then returns a pure,
// thread-safe scorer over supports of g.
BoundScorer make_scorer(const WeightedDigraph& g, const ScoreSpec& spec);

// ---------------------------------------------------------------------------
// Temporal tracking

struct TemporalDataset {
  std::vector<int> years;  // ascending
  std::vector<WeightedDigraph> graphs;

  // Throws InconsistentLabels unless all graphs share size and label order.
  void validate() const;
};

struct ReferenceFamily {
  FamilyKind kind = FamilyKind::CycleSupports;
  std::size_t k = 4;

  std::string name() const;
};

SupportFamily enumerate_family(const WeightedDigraph& g, ReferenceFamily family);

struct TrackRow {
  int year = 0;
  double lambda = 0.0;
  double subject = 0.0;         // c_t(subject)
  double reference_mean = 0.0;  // mean of c_t over the reference family
  double reference_std = 0.0;   // population standard deviation
  std::size_t reference_count = 0;
};

struct TemporalTrack {
  VertexSet subject;
  std::vector<std::string> subject_labels;
  ReferenceFamily reference;
  std::vector<TrackRow> rows;
  double subject_time_mean = 0.0;    // <c(subject)>_t
  double reference_time_mean = 0.0;  // <<c>_family>_t, unweighted mean of yearly means
  double ratio = 0.0;                // subject_time_mean / reference_time_mean
};

// Per-year lambda, c_t(subject), and the reference family's mean and spread.
TemporalTrack temporal_track(const TemporalDataset& ds, const VertexSet& subject, ReferenceFamily reference,
                             std::size_t threads = 0);

// ---------------------------------------------------------------------------
// ROC evaluation

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) ... (1,1), both coordinates non-decreasing
  double auc = 0.0;
  double discrimination = 0.0;   // area between the curve and the diagonal
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

// Descending-score sweep; equal scores form one group and one diagonal segment.
// Throws DegenerateTruth if every item is positive or every item negative.
RocCurve roc_from_scores(std::span<const double> scores, const std::vector<bool>& truth);

// integral over [0,1] of |roc(x) - x| for the piecewise-linear curve.
double area_from_diagonal(std::span<const RocPoint> points);

using VertexPair = std::pair<Vertex, Vertex>;  // first < second

struct TriadLabelRule {
  VertexSet anchors;
  VertexSet targets;
  std::set<VertexPair> immune_edges;
};

// Builds a rule, normalizing immune pairs and checking that each is an edge of g.
TriadLabelRule make_triad_rule(const WeightedDigraph& g, VertexSet anchors, VertexSet targets,
                               const std::vector<VertexPair>& immune_edges);

struct LabeledTriads {
  SupportFamily triads;  // those meeting an anchor, still in lexicographic order
  std::vector<bool> truth;
};

// Keeps triads containing at least one anchor. A triad is positive when it has
// a target that is not one of the anchors AND one of its vertex pairs is an
// immune edge.
LabeledTriads triad_truth(const TriadLabelRule& rule, const SupportFamily& family);

// The `count` vertices with the largest eigenvector centrality (ties to the
// lower index), returned as a set.
VertexSet top_eigenvector_anchors(const WeightedDigraph& g, std::size_t count = 2);

// Vertices ranked by unweighted degree; positives are the targets.
RocCurve degree_model_roc(const WeightedDigraph& g, const VertexSet& targets);

struct TriadModelOptions {
  ScoreSpec score;
  std::size_t threads = 0;
};

struct TriadModelResult {
  LabeledTriads labeled;
  std::vector<double> scores;  // aligned with labeled.triads
  RocCurve roc;
  std::string method;
  std::size_t total_triads = 0;
};

// Enumerates all triads, keeps the anchored ones, scores them and builds the ROC.
TriadModelResult triad_model_roc(const WeightedDigraph& g, const TriadLabelRule& rule,
                                 TriadModelOptions options = {});

}  // namespace cyclerank
