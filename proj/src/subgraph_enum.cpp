#include "cyclerank/subgraph_enum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "cyclerank/error.hpp"

namespace cyclerank {

SupportFamily::SupportFamily(FamilyKind kind, std::size_t support_size, std::vector<Vertex> members)
    : kind_(kind), k_(support_size), members_(std::move(members)) {
  if (k_ == 0 || members_.size() % k_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "flat support list does not match the support size");
  }
}

std::string SupportFamily::name() const {
  switch (kind_) {
    case FamilyKind::Pairs: return "pairs";
    case FamilyKind::ConnectedTriples: return "triads";
    case FamilyKind::CycleSupports: return "cycles" + std::to_string(k_);
  }
  return "unknown";
}

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

Adjacency skeleton(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  Adjacency adj(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i != j && g.adjacent(i, j)) adj[i].push_back(j);
    }
  }
  return adj;
}

// Connectivity of the skeleton induced on a handful of vertices.
bool skeleton_connected(const WeightedDigraph& g, SupportView s) {
  const std::size_t k = s.size();
  if (k <= 1) return true;
  unsigned reached = 1u;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < k; ++a) {
      if (!(reached & (1u << a))) continue;
      for (std::size_t b = 0; b < k; ++b) {
        if ((reached & (1u << b)) || !g.adjacent(s[a], s[b])) continue;
        reached |= 1u << b;
        grew = true;
      }
    }
  }
  return reached == (1u << k) - 1u;
}

// Lexicographic k-combinations of [0, n) passing `keep`.
template <typename Keep>
std::vector<Vertex> filter_combinations(std::size_t n, std::size_t k, Keep&& keep) {
  std::vector<Vertex> out;
  if (k > n) return out;
  std::vector<Vertex> c(k);
  std::iota(c.begin(), c.end(), Vertex{0});
  while (true) {
    if (keep(SupportView(c))) out.insert(out.end(), c.begin(), c.end());
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

class ExtensionEnumerator {
 public:
  ExtensionEnumerator(const WeightedDigraph& g, const Adjacency& adj, std::size_t k)
      : g_(g), adj_(adj), k_(k) {}

  std::vector<Vertex> run() {
    for (Vertex v = 0; v < adj_.size(); ++v) {
      root_ = v;
      std::vector<Vertex> ext;
      for (Vertex u : adj_[v]) {
        if (u > v) ext.push_back(u);
      }
      current_.assign(1, v);
      extend(std::move(ext));
    }
    sort_flat();
    return std::move(out_);
  }

 private:
  bool in_neighbourhood(Vertex u) const {
    for (Vertex x : current_) {
      if (x == u || g_.adjacent(x, u)) return true;
    }
    return false;
  }

  void extend(std::vector<Vertex> ext) {
    if (current_.size() == k_) {
      std::vector<Vertex> s = current_;
      std::sort(s.begin(), s.end());
      out_.insert(out_.end(), s.begin(), s.end());
      return;
    }
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : adj_[w]) {
        if (u > root_ && !in_neighbourhood(u) && std::find(next.begin(), next.end(), u) == next.end()) {
          next.push_back(u);
        }
      }
      current_.push_back(w);
      extend(std::move(next));
      current_.pop_back();
    }
  }

  void sort_flat() {
    const std::size_t count = out_.size() / k_;
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto at = [&](std::size_t i) { return out_.begin() + static_cast<std::ptrdiff_t>(i * k_); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(at(a), at(a) + k_, at(b), at(b) + k_);
    });
    std::vector<Vertex> sorted;
    sorted.reserve(out_.size());
    for (std::size_t i : order) sorted.insert(sorted.end(), at(i), at(i) + k_);
    out_ = std::move(sorted);
  }

  const WeightedDigraph& g_;
  const Adjacency& adj_;
  std::size_t k_;
  Vertex root_ = 0;
  std::vector<Vertex> current_;
  std::vector<Vertex> out_;
};

// Above this skeleton density, filtering all C(n,k) subsets beats extension trees.
constexpr double kDenseThreshold = 0.5;

}  // namespace

std::vector<Vertex> connected_supports(const WeightedDigraph& g, std::size_t k) {
  const std::size_t n = g.size();
  if (k == 0 || k > 16) throw Error(ErrorCode::UnsupportedK, "support size " + std::to_string(k));
  if (k > n) return {};
  const Adjacency adj = skeleton(g);
  if (k == 1) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
  }
  std::size_t edges = 0;
  for (const auto& row : adj) edges += row.size();
  const double density = n < 2 ? 1.0 : static_cast<double>(edges) / static_cast<double>(n * (n - 1));
  if (density > kDenseThreshold) {
    return filter_combinations(n, k, [&](SupportView s) { return skeleton_connected(g, s); });
  }
  return ExtensionEnumerator(g, adj, k).run();
}

bool has_spanning_cycle(const WeightedDigraph& g, SupportView s) {
  const std::size_t k = s.size();
  if (k == 0) return false;
  if (k == 1) return g.weight(s[0], s[0]) != 0.0;
  auto linked = [&](Vertex a, Vertex b) { return g.weight(a, b) != 0.0; };
  if (k == 2) return g.directed() && linked(s[0], s[1]) && linked(s[1], s[0]);
  std::vector<Vertex> order(s.begin(), s.end());
  std::sort(order.begin() + 1, order.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = linked(order[i], order[(i + 1) % k]);
    if (ok) return true;
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return false;
}

SupportFamily pair_supports(const WeightedDigraph& g) {
  std::vector<Vertex> flat;
  for (Vertex i = 0; i < g.size(); ++i) {
    for (Vertex j = i + 1; j < g.size(); ++j) {
      if (g.adjacent(i, j)) {
        flat.push_back(i);
        flat.push_back(j);
      }
    }
  }
  return SupportFamily(FamilyKind::Pairs, 2, std::move(flat));
}

SupportFamily connected_triple_supports(const WeightedDigraph& g) {
  return SupportFamily(FamilyKind::ConnectedTriples, 3, connected_supports(g, 3));
}

SupportFamily cycle_supports(const WeightedDigraph& g, std::size_t k) {
  if (k < 3 || k > 5) {
    throw Error(ErrorCode::UnsupportedK, "cycle supports need k in {3,4,5}, got " + std::to_string(k));
  }
  const std::vector<Vertex> connected = connected_supports(g, k);
  std::vector<Vertex> flat;
  flat.reserve(connected.size());
  for (std::size_t i = 0; i < connected.size(); i += k) {
    const SupportView s(connected.data() + i, k);
    if (has_spanning_cycle(g, s)) flat.insert(flat.end(), s.begin(), s.end());
  }
  return SupportFamily(FamilyKind::CycleSupports, k, std::move(flat));
}

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CYCLERANK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string describe(SupportView s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

std::vector<double> score_supports(const SupportFamily& family, const SupportScorer& scorer,
                                   std::size_t threads) {
  const std::size_t count = family.size();
  std::vector<double> scores(count);
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::atomic<std::size_t> next_block{0};
  std::atomic<std::size_t> first_failure{count};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto work = [&] {
    for (std::size_t b = next_block++; b < blocks; b = next_block++) {
      const std::size_t begin = b * kBlock;
      const std::size_t end = std::min(count, begin + kBlock);
      for (std::size_t i = begin; i < end && i < first_failure.load(); ++i) {
        try {
          const double v = scorer(family[i]);
          if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteScore, "score is not finite");
          scores[i] = v;
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (i < first_failure.load()) {
            first_failure = i;
            failure = std::current_exception();
          }
        }
      }
    }
  };

  const std::size_t workers = std::min(resolve_thread_count(threads), std::max<std::size_t>(blocks, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  if (failure) {
    const std::string where = " at support " + describe(family[first_failure]);
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error(e.code(), e.detail() + where);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::InvalidArgument, e.what() + where);
    }
  }
  return scores;
}

RankedSupports rank_supports(const SupportFamily& family, const SupportScorer& scorer, RankOptions options) {
  const std::vector<double> scores = score_supports(family, scorer, options.threads);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::size_t keep = order.size();
  if (options.top_m && *options.top_m < keep) {
    keep = *options.top_m;
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), before);
    order.resize(keep);
  } else {
    std::sort(order.begin(), order.end(), before);
  }

  RankedSupports out;
  out.support_size = family.support_size();
  out.scores.reserve(keep);
  out.family_index = order;
  out.members.reserve(keep * out.support_size);
  for (std::size_t i : order) {
    out.scores.push_back(scores[i]);
    const SupportView s = family[i];
    out.members.insert(out.members.end(), s.begin(), s.end());
  }
  return out;
}

}  // namespace cyclerank
