#include "cyclerank/graph.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "cyclerank/error.hpp"

namespace cyclerank {

namespace {

void normalize(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

VertexSet::VertexSet(std::initializer_list<Vertex> members) : members_(members) {
  normalize(members_);
}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  normalize(members_);
}

VertexSet::VertexSet(SupportView members) : members_(members.begin(), members.end()) {
  normalize(members_);
}

VertexSet VertexSet::all(std::size_t n) {
  std::vector<Vertex> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Vertex>(i);
  return VertexSet(std::move(m));
}

bool VertexSet::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSet::validate(std::size_t n) const {
  if (!members_.empty() && members_.back() >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vertex " + std::to_string(members_.back()) + " not in a graph of " +
                    std::to_string(n) + " vertices");
  }
}

VertexSet VertexSet::complement(std::size_t n) const {
  validate(n);
  std::vector<Vertex> rest;
  rest.reserve(n - members_.size());
  auto it = members_.begin();
  for (std::size_t i = 0; i < n; ++i) {
    if (it != members_.end() && *it == i) {
      ++it;
    } else {
      rest.push_back(static_cast<Vertex>(i));
    }
  }
  VertexSet out;
  out.members_ = std::move(rest);
  return out;
}

WeightedDigraph::WeightedDigraph(Matrix weights, bool directed, std::vector<std::string> labels,
                                 GraphOptions options)
    : weights_(std::move(weights)), labels_(std::move(labels)), directed_(directed), options_(options) {
  if (weights_.rows() != weights_.cols()) {
    throw Error(ErrorCode::NonSquareMatrix, "weight matrix is " + std::to_string(weights_.rows()) +
                                                "x" + std::to_string(weights_.cols()));
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(size()) +
                                                " labels, got " + std::to_string(labels_.size()));
  }
  if (!weights_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "weights must be finite");
  }
  nonnegative_ = !(weights_.array() < 0.0).any();
  if (!options_.allow_negative && !nonnegative_) {
    throw Error(ErrorCode::NegativeWeight, "negative edge weight without allow_negative");
  }
  if (!directed_ && weights_ != weights_.transpose()) {
    throw Error(ErrorCode::NotSymmetric, "undirected graph with an asymmetric weight matrix");
  }
}

std::string WeightedDigraph::label(Vertex i) const {
  if (i >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(i));
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

std::optional<Vertex> WeightedDigraph::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (this->label(static_cast<Vertex>(i)) == label) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

WeightedDigraph build_graph(std::size_t n, std::span<const Edge> edges, bool directed,
                            std::vector<std::string> labels, GraphOptions options) {
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.src) + ", " +
                                                  std::to_string(e.dst) + ") in a graph of " +
                                                  std::to_string(n) + " vertices");
    }
    if (e.weight < 0.0 && !options.allow_negative) {
      throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(e.src) + ", " +
                                                 std::to_string(e.dst) + ") has weight " +
                                                 std::to_string(e.weight));
    }
    const std::pair<Vertex, Vertex> key = directed ? std::pair{e.src, e.dst} : std::pair<Vertex, Vertex>(std::minmax(e.src, e.dst));
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ") listed twice");
    }
    w(e.src, e.dst) = e.weight;
    if (!directed) w(e.dst, e.src) = e.weight;
  }
  return WeightedDigraph(std::move(w), directed, std::move(labels), options);
}

void complement_submatrix(const Matrix& weights, SupportView removed, Matrix& out) {
  const auto n = static_cast<std::size_t>(weights.rows());
  const auto m = static_cast<Eigen::Index>(n - removed.size());
  thread_local std::vector<Eigen::Index> kept;
  kept.clear();
  auto it = removed.begin();
  for (std::size_t i = 0; i < n; ++i) {
    if (it != removed.end() && *it == i) {
      ++it;
    } else {
      kept.push_back(static_cast<Eigen::Index>(i));
    }
  }
  out.resize(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) out(r, c) = weights(kept[r], kept[c]);
  }
}

WeightedDigraph induced_subgraph(const WeightedDigraph& g, const VertexSet& s) {
  s.validate(g.size());
  const auto m = static_cast<Eigen::Index>(s.size());
  Matrix w(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) w(r, c) = g.weights()(s.members()[r], s.members()[c]);
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(s.size());
    for (Vertex v : s.members()) labels.push_back(g.labels()[v]);
  }
  return WeightedDigraph(std::move(w), g.directed(), std::move(labels), g.options());
}

WeightedDigraph remove_vertex_set(const WeightedDigraph& g, const VertexSet& s) {
  return induced_subgraph(g, s.complement(g.size()));
}

WeightedDigraph permute(const WeightedDigraph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.size();
  if (perm.size() != n) throw Error(ErrorCode::InvalidArgument, "permutation has the wrong length");
  std::vector<bool> hit(n, false);
  for (Vertex p : perm) {
    if (p >= n || hit[p]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    hit[p] = true;
  }
  Matrix w(g.weights().rows(), g.weights().cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(perm[i], perm[j]) = g.weights()(i, j);
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels[perm[i]] = g.labels()[i];
  }
  return WeightedDigraph(std::move(w), g.directed(), std::move(labels), g.options());
}

std::vector<VertexDegree> weighted_degrees(const WeightedDigraph& g) {
  std::vector<VertexDegree> d(g.size());
  const Vector rows = g.weights().rowwise().sum();
  const Vector cols = g.weights().colwise().sum().transpose();
  for (std::size_t i = 0; i < g.size(); ++i) {
    d[i].out = rows(i);
    d[i].in = cols(i);
    d[i].total = g.directed() ? d[i].in + d[i].out : d[i].out;
  }
  return d;
}

std::vector<std::size_t> unweighted_degrees(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> d(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j))) ++d[i];
    }
  }
  return d;
}

}  // namespace cyclerank
