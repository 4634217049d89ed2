#include "cyclerank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cyclerank/centrality.hpp"
#include "cyclerank/error.hpp"
#include "cyclerank/spectral.hpp"

namespace cyclerank {

BoundScorer make_scorer(const WeightedDigraph& g, const ScoreSpec& spec) {
  BoundScorer out;
  const WeightedDigraph* graph = &g;
  auto sigma = [](std::vector<double> scores) {
    return [scores = std::move(scores)](SupportView s) { return sigma_sum(scores, s); };
  };
  switch (spec.kind) {
    case ScoreKind::Cycle: {
      const double lambda = dominant_eigenpair(g).lambda;
      out.lambda = lambda;
      if (spec.approx_q) {
        const std::size_t q = *spec.approx_q;
        if (q == 0) throw Error(ErrorCode::InvalidArgument, "approximation needs q >= 1");
        out.method = "approx(q=" + std::to_string(q) + ")";
        out.score = [graph, lambda, q](SupportView s) {
          const std::size_t rest = graph->size() - s.size();
          return subgraph_centrality_approx(*graph, s, lambda, std::min(q, std::max<std::size_t>(rest, 1)))
              .value;
        };
      } else {
        out.method = "exact";
        out.score = [graph, lambda](SupportView s) { return subgraph_centrality(*graph, s, lambda).value; };
      }
      break;
    }
    case ScoreKind::SigmaEigenvector:
      out.method = "sigma-eig";
      out.score = sigma(eigenvector_centrality(g));
      break;
    case ScoreKind::SigmaResolvent: {
      out.lambda = spectral_radius(g);
      if (spec.alpha) {
        out.alpha = *spec.alpha;
      } else {
        if (!(out.lambda > 0.0)) {
          throw Error(ErrorCode::ZeroSpectralRadius, "alpha relative to 1/lambda needs lambda > 0");
        }
        out.alpha = spec.alpha_fraction / out.lambda;
      }
      out.method = "sigma-resolvent";
      out.score = sigma(resolvent_centrality(g, out.alpha));
      break;
    }
    case ScoreKind::SigmaExponential:
      out.r = spec.r ? *spec.r : default_exponential_r(g);
      out.method = "sigma-exp";
      out.score = sigma(exponential_centrality(g, out.r));
      break;
  }
  return out;
}

void TemporalDataset::validate() const {
  if (years.size() != graphs.size()) {
    throw Error(ErrorCode::InvalidArgument, "one graph per year required");
  }
  if (!std::is_sorted(years.begin(), years.end()) ||
      std::adjacent_find(years.begin(), years.end()) != years.end()) {
    throw Error(ErrorCode::InvalidArgument, "years must be strictly increasing");
  }
  for (std::size_t t = 1; t < graphs.size(); ++t) {
    if (graphs[t].size() != graphs[0].size() || graphs[t].labels() != graphs[0].labels()) {
      throw Error(ErrorCode::InconsistentLabels,
                  "year " + std::to_string(years[t]) + " does not share the vertex labels of year " +
                      std::to_string(years[0]));
    }
  }
}

std::string ReferenceFamily::name() const {
  switch (kind) {
    case FamilyKind::Pairs: return "pairs";
    case FamilyKind::ConnectedTriples: return "triads";
    case FamilyKind::CycleSupports: return "cycles" + std::to_string(k);
  }
  return "unknown";
}

SupportFamily enumerate_family(const WeightedDigraph& g, ReferenceFamily family) {
  switch (family.kind) {
    case FamilyKind::Pairs: return pair_supports(g);
    case FamilyKind::ConnectedTriples: return connected_triple_supports(g);
    case FamilyKind::CycleSupports: return cycle_supports(g, family.k);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

TemporalTrack temporal_track(const TemporalDataset& ds, const VertexSet& subject, ReferenceFamily reference,
                             std::size_t threads) {
  ds.validate();
  if (ds.graphs.empty()) throw Error(ErrorCode::TooFewYears, "no years in dataset");
  subject.validate(ds.graphs.front().size());

  TemporalTrack track;
  track.subject = subject;
  track.reference = reference;
  for (Vertex v : subject.members()) track.subject_labels.push_back(ds.graphs.front().label(v));

  for (std::size_t t = 0; t < ds.graphs.size(); ++t) {
    const WeightedDigraph& g = ds.graphs[t];
    TrackRow row;
    row.year = ds.years[t];
    try {
      row.lambda = dominant_eigenpair(g).lambda;
    } catch (const Error& e) {
      throw Error(e.code(), "year " + std::to_string(row.year) + ": " + e.detail());
    }
    row.subject = subgraph_centrality(g, subject, row.lambda).value;

    const SupportFamily family = enumerate_family(g, reference);
    const double lambda = row.lambda;
    const auto scores = score_supports(
        family, [&g, lambda](SupportView s) { return subgraph_centrality(g, s, lambda).value; }, threads);
    row.reference_count = scores.size();
    if (!scores.empty()) {
      const double n = static_cast<double>(scores.size());
      row.reference_mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
      double ss = 0.0;
      for (double x : scores) ss += (x - row.reference_mean) * (x - row.reference_mean);
      row.reference_std = std::sqrt(ss / n);
    }
    track.rows.push_back(row);
  }

  const double years = static_cast<double>(track.rows.size());
  for (const TrackRow& row : track.rows) {
    track.subject_time_mean += row.subject / years;
    track.reference_time_mean += row.reference_mean / years;
  }
  track.ratio = track.reference_time_mean > 0.0 ? track.subject_time_mean / track.reference_time_mean
                                                 : std::numeric_limits<double>::quiet_NaN();
  return track;
}

RocCurve roc_from_scores(std::span<const double> scores, const std::vector<bool>& truth) {
  if (scores.size() != truth.size()) {
    throw Error(ErrorCode::InvalidArgument, "scores and truth differ in length");
  }
  RocCurve roc;
  for (bool t : truth) (t ? roc.positives : roc.negatives)++;
  if (roc.positives == 0 || roc.negatives == 0) {
    throw Error(ErrorCode::DegenerateTruth, "ROC needs at least one positive and one negative item");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const double p = static_cast<double>(roc.positives);
  const double n = static_cast<double>(roc.negatives);
  std::size_t tp = 0;
  std::size_t fp = 0;
  roc.points.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (truth[order[j]] ? tp : fp)++;
      ++j;
    }
    roc.points.push_back({static_cast<double>(fp) / n, static_cast<double>(tp) / p});
    i = j;
  }
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    const RocPoint& a = roc.points[i - 1];
    const RocPoint& b = roc.points[i];
    roc.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  roc.discrimination = area_from_diagonal(roc.points);
  return roc;
}

double area_from_diagonal(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double dx = points[i].fpr - points[i - 1].fpr;
    if (dx <= 0.0) continue;
    const double d0 = points[i - 1].tpr - points[i - 1].fpr;
    const double d1 = points[i].tpr - points[i].fpr;
    const double a0 = std::abs(d0);
    const double a1 = std::abs(d1);
    if (d0 * d1 >= 0.0) {
      area += dx * (a0 + a1) / 2.0;
    } else {
      // The segment crosses the diagonal; two triangles.
      area += dx * (d0 * d0 + d1 * d1) / (2.0 * (a0 + a1));
    }
  }
  return area;
}

TriadLabelRule make_triad_rule(const WeightedDigraph& g, VertexSet anchors, VertexSet targets,
                               const std::vector<VertexPair>& immune_edges) {
  anchors.validate(g.size());
  targets.validate(g.size());
  TriadLabelRule rule{std::move(anchors), std::move(targets), {}};
  for (auto [a, b] : immune_edges) {
    if (a >= g.size() || b >= g.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "immune edge endpoint out of range");
    }
    if (a == b || !g.adjacent(a, b)) {
      throw Error(ErrorCode::InvalidArgument, "immune pair (" + g.label(a) + ", " + g.label(b) +
                                                  ") is not an edge of the graph");
    }
    rule.immune_edges.insert(std::minmax(a, b));
  }
  return rule;
}

LabeledTriads triad_truth(const TriadLabelRule& rule, const SupportFamily& family) {
  std::vector<Vertex> kept;
  std::vector<bool> truth;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const SupportView t = family[i];
    const bool anchored = std::any_of(t.begin(), t.end(), [&](Vertex v) { return rule.anchors.contains(v); });
    if (!anchored) continue;
    const bool has_target = std::any_of(t.begin(), t.end(), [&](Vertex v) {
      return !rule.anchors.contains(v) && rule.targets.contains(v);
    });
    bool has_immune = false;
    for (std::size_t a = 0; a < t.size() && !has_immune; ++a) {
      for (std::size_t b = a + 1; b < t.size() && !has_immune; ++b) {
        has_immune = rule.immune_edges.count(std::minmax(t[a], t[b])) > 0;
      }
    }
    kept.insert(kept.end(), t.begin(), t.end());
    truth.push_back(has_target && has_immune);
  }
  return {SupportFamily(family.kind(), family.support_size(), std::move(kept)), std::move(truth)};
}

VertexSet top_eigenvector_anchors(const WeightedDigraph& g, std::size_t count) {
  const auto ev = eigenvector_centrality(g);
  std::vector<Vertex> order(ev.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return ev[a] > ev[b]; });
  order.resize(std::min(count, order.size()));
  return VertexSet(std::move(order));
}

RocCurve degree_model_roc(const WeightedDigraph& g, const VertexSet& targets) {
  targets.validate(g.size());
  const auto degree = unweighted_degrees(g);
  std::vector<double> scores(degree.begin(), degree.end());
  std::vector<bool> truth(g.size());
  for (Vertex v = 0; v < g.size(); ++v) truth[v] = targets.contains(v);
  return roc_from_scores(scores, truth);
}

TriadModelResult triad_model_roc(const WeightedDigraph& g, const TriadLabelRule& rule, TriadModelOptions options) {
  const SupportFamily all = connected_triple_supports(g);
  TriadModelResult result{triad_truth(rule, all), {}, {}, {}, all.size()};
  const BoundScorer scorer = make_scorer(g, options.score);
  result.method = scorer.method;
  result.scores = score_supports(result.labeled.triads, scorer.score, options.threads);
  result.roc = roc_from_scores(result.scores, result.labeled.truth);
  return result;
}

}  // namespace cyclerank
