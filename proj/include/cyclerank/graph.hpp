#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cyclerank {

using Vertex = std::uint32_t;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Read-only view of a sorted, duplicate-free list of vertices.
using SupportView = std::span<const Vertex>;

// Sorted, deduplicated vertex indices: the support of a cycle or subgraph.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);
  explicit VertexSet(SupportView members);

  static VertexSet all(std::size_t n);

  const std::vector<Vertex>& members() const noexcept { return members_; }
  SupportView view() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const noexcept;

  // Throws IndexOutOfRange unless every member is below n.
  void validate(std::size_t n) const;

  // Vertices of [0, n) not in this set, ascending.
  VertexSet complement(std::size_t n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

struct Edge {
  Vertex src;
  Vertex dst;
  double weight;
};

struct GraphOptions {
  // Permit negative weights. All [0,1] guarantees of the centrality measure
  // are void for such graphs.
  bool allow_negative = false;
};

// Dense, nonnegatively weighted (di)graph. weight(i, j) is the edge i->j.
// Immutable once constructed.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  // Validates shape, symmetry (when undirected), sign and label count.
  WeightedDigraph(Matrix weights, bool directed, std::vector<std::string> labels = {},
                  GraphOptions options = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  const Matrix& weights() const noexcept { return weights_; }
  double weight(Vertex i, Vertex j) const { return weights_(i, j); }
  bool directed() const noexcept { return directed_; }
  bool allows_negative() const noexcept { return options_.allow_negative; }
  // No entry is negative (always true unless allow_negative was set).
  bool nonnegative() const noexcept { return nonnegative_; }
  const GraphOptions& options() const noexcept { return options_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  // Label of vertex i, or its decimal index when the graph is unlabeled.
  std::string label(Vertex i) const;
  std::optional<Vertex> find_label(std::string_view label) const;

  // True if i and j are joined in either direction (i != j).
  bool adjacent(Vertex i, Vertex j) const { return weights_(i, j) != 0.0 || weights_(j, i) != 0.0; }

 private:
  Matrix weights_;
  std::vector<std::string> labels_;
  bool directed_ = true;
  bool nonnegative_ = true;
  GraphOptions options_;
};

WeightedDigraph build_graph(std::size_t n, std::span<const Edge> edges, bool directed,
                            std::vector<std::string> labels = {}, GraphOptions options = {});

// Principal submatrix of `weights` on the vertices NOT in `removed`, written
// into `out` (resized as needed). `removed` must be sorted and in range.
void complement_submatrix(const Matrix& weights, SupportView removed, Matrix& out);

// Graph on the complement of s, relabeled to 0..n-|s|-1 in ascending order of
// the original indices (see VertexSet::complement for the index map).
WeightedDigraph remove_vertex_set(const WeightedDigraph& g, const VertexSet& s);

WeightedDigraph induced_subgraph(const WeightedDigraph& g, const VertexSet& s);

// perm[i] is the new index of old vertex i.
WeightedDigraph permute(const WeightedDigraph& g, std::span<const Vertex> perm);

struct VertexDegree {
  double in = 0.0;
  double out = 0.0;
  // in + out for digraphs; the (symmetric) row sum for undirected graphs.
  double total = 0.0;
};

std::vector<VertexDegree> weighted_degrees(const WeightedDigraph& g);

// Number of distinct neighbours j != i, ignoring weights and direction.
std::vector<std::size_t> unweighted_degrees(const WeightedDigraph& g);

}  // namespace cyclerank
