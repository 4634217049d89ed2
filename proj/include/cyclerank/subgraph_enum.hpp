#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cyclerank/graph.hpp"

namespace cyclerank {

enum class FamilyKind { Pairs, ConnectedTriples, CycleSupports };

// Vertex supports of one fixed size, lexicographically sorted and unique,
// stored flat (support i occupies members[i*k, (i+1)*k)).
class SupportFamily {
 public:
  SupportFamily(FamilyKind kind, std::size_t support_size, std::vector<Vertex> members);

  FamilyKind kind() const noexcept { return kind_; }
  std::size_t support_size() const noexcept { return k_; }
  std::size_t size() const noexcept { return k_ == 0 ? 0 : members_.size() / k_; }
  bool empty() const noexcept { return size() == 0; }
  SupportView operator[](std::size_t i) const { return SupportView(members_).subspan(i * k_, k_); }
  const std::vector<Vertex>& flat() const noexcept { return members_; }

  // "pairs", "triads", "cycles3", ...
  std::string name() const;

 private:
  FamilyKind kind_;
  std::size_t k_;
  std::vector<Vertex> members_;
};

// Unordered pairs {i, j} joined by an edge in either direction.
SupportFamily pair_supports(const WeightedDigraph& g);

// 3-subsets whose induced undirected skeleton is connected (paths and triangles).
SupportFamily connected_triple_supports(const WeightedDigraph& g);

// k-subsets (k in {3,4,5}) whose induced subgraph has a cycle through all k
// vertices; directed cycles when g is directed. Throws UnsupportedK.
SupportFamily cycle_supports(const WeightedDigraph& g, std::size_t k);

// Connected induced k-subsets of the undirected skeleton, via extension trees
// (ESU) on sparse graphs and filtered combinations on dense ones. Cost is
// O(N Delta^k) in the sparse regime, Delta the maximum degree.
std::vector<Vertex> connected_supports(const WeightedDigraph& g, std::size_t k);

// Brute-force Hamiltonian cycle test on the subgraph induced by s.
bool has_spanning_cycle(const WeightedDigraph& g, SupportView s);

using SupportScorer = std::function<double(SupportView)>;

struct RankedSupports {
  std::size_t support_size = 0;
  std::vector<Vertex> members;  // flat, in rank order
  std::vector<double> scores;   // descending
  std::vector<std::size_t> family_index;

  std::size_t size() const noexcept { return scores.size(); }
  SupportView operator[](std::size_t i) const {
    return SupportView(members).subspan(i * support_size, support_size);
  }
};

struct RankOptions {
  std::optional<std::size_t> top_m;
  // 0 selects CYCLERANK_THREADS, falling back to the hardware concurrency.
  std::size_t threads = 0;
};

// Scores every support on a worker pool and sorts descending; ties keep the
// family's lexicographic order. Output is independent of the worker count.
// A throwing scorer is reported with the lowest-index failing support.
RankedSupports rank_supports(const SupportFamily& family, const SupportScorer& scorer,
                             RankOptions options = {});

// Applies scorer to every support in parallel, preserving family order.
std::vector<double> score_supports(const SupportFamily& family, const SupportScorer& scorer,
                                   std::size_t threads = 0);

std::size_t resolve_thread_count(std::size_t requested);

}  // namespace cyclerank
