#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cyclerank/centrality.hpp"
#include "cyclerank/error.hpp"
#include "cyclerank/subgraph_enum.hpp"
#include "support.hpp"

using namespace cyclerank;
using namespace testing;
using doctest::Approx;

namespace {

using Supports = std::vector<std::vector<Vertex>>;

Supports as_lists(const SupportFamily& f) {
  Supports out;
  for (std::size_t i = 0; i < f.size(); ++i) out.emplace_back(f[i].begin(), f[i].end());
  return out;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Independent reference: every k-subset, tested by trying every vertex order
// (including all rotations and both directions) for a closed cycle.
Supports brute_cycle_supports(const WeightedDigraph& g, std::size_t k) {
  Supports out;
  const std::size_t n = g.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
  do {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) s.push_back(v);
    }
    std::vector<Vertex> order = s;
    bool found = false;
    do {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = g.weight(order[i], order[(i + 1) % k]) != 0.0;
      found = ok;
    } while (!found && std::next_permutation(order.begin(), order.end()));
    if (found) out.push_back(s);
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

Supports brute_connected(const WeightedDigraph& g, std::size_t k) {
  Supports out;
  const std::size_t n = g.size();
  if (k > n) return out;
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
  do {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) s.push_back(v);
    }
    std::set<Vertex> seen{s[0]};
    std::vector<Vertex> stack{s[0]};
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : s) {
        if (!seen.count(w) && g.adjacent(u, w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    if (seen.size() == k) out.push_back(s);
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("pair supports") {
  CHECK(pair_supports(complete(4)).size() == 6);
  CHECK(as_lists(pair_supports(path(3))) == Supports{{0, 1}, {1, 2}});
  CHECK(pair_supports(complete(10, true)).size() == 45);
  CHECK(pair_supports(from_edges(2, {{1, 0}}, true)).size() == 1);
}

TEST_CASE("connected triples") {
  CHECK(as_lists(connected_triple_supports(path(4))) == Supports{{0, 1, 2}, {1, 2, 3}});
  CHECK(connected_triple_supports(complete(4)).size() == 4);
  CHECK(as_lists(connected_triple_supports(star(3))) == Supports{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
  CHECK(connected_triple_supports(path(2)).size() == 0);
}

TEST_CASE("cycle supports") {
  CHECK(cycle_supports(cycle(4), 4).size() == 1);
  CHECK(cycle_supports(cycle(4), 3).size() == 0);
  CHECK(cycle_supports(complete(4), 3).size() == 4);
  CHECK(cycle_supports(complete(4), 4).size() == 1);
  // One-way 3-cycle: supports depend on direction.
  CHECK(cycle_supports(cycle(3, true), 3).size() == 1);
  CHECK(cycle_supports(from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, true), 3).size() == 0);

  for (std::size_t bad : {0, 2, 6}) {
    try {
      cycle_supports(complete(6), bad);
      FAIL("expected UnsupportedK");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedK);
    }
  }
}

TEST_CASE("complete digraph counts") {
  for (std::size_t n : {5, 10}) {
    const auto g = complete(n, true);
    CHECK(pair_supports(g).size() == choose(n, 2));
    for (std::size_t k = 3; k <= 5; ++k) CHECK(cycle_supports(g, k).size() == choose(n, k));
  }
}

TEST_CASE("enumeration agrees with brute force on random graphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const bool directed = trial % 2 == 0;
    // Densities on both sides of the dense/sparse switch.
    const double density = trial % 3 == 0 ? 0.8 : 0.2;
    const auto g = random_graph(rng, {.n = 5 + static_cast<std::size_t>(trial % 7), .directed = directed,
                                      .density = density});
    for (std::size_t k = 3; k <= 5; ++k) {
      const auto family = cycle_supports(g, k);
      CHECK(as_lists(family) == brute_cycle_supports(g, k));
      for (std::size_t i = 0; i < family.size(); ++i) CHECK(has_spanning_cycle(g, family[i]));
    }
    for (std::size_t k = 2; k <= 5; ++k) {
      const auto flat = connected_supports(g, k);
      Supports got;
      for (std::size_t i = 0; i < flat.size(); i += k) got.emplace_back(flat.begin() + i, flat.begin() + i + k);
      CHECK(got == brute_connected(g, k));
    }
  }
}

TEST_CASE("ranking") {
  SUBCASE("C4 pairs by cycle centrality") {
    const auto g = cycle(4);
    const auto family = pair_supports(g);
    const double lambda = dominant_eigenpair(g).lambda;
    // C4 pairs that are edges are adjacent; add the opposite pairs by hand.
    std::vector<Vertex> flat = family.flat();
    for (Vertex v : {0u, 2u, 1u, 3u}) flat.push_back(v);
    const SupportFamily all(FamilyKind::Pairs, 2, flat);
    const auto ranked = rank_supports(all, [&](SupportView s) { return subgraph_centrality(g, s, lambda).value; });
    REQUIRE(ranked.size() == 6);
    CHECK(ranked.scores[0] == Approx(1.0));
    CHECK(ranked.scores[1] == Approx(1.0));
    CHECK(std::vector<Vertex>(ranked[0].begin(), ranked[0].end()) == std::vector<Vertex>{0, 2});
    CHECK(std::vector<Vertex>(ranked[1].begin(), ranked[1].end()) == std::vector<Vertex>{1, 3});
    for (std::size_t i = 2; i < 6; ++i) CHECK(ranked.scores[i] == Approx(0.75));
  }
  SUBCASE("constant scorer keeps lexicographic order") {
    const auto family = connected_triple_supports(complete(6));
    const auto ranked = rank_supports(family, [](SupportView) { return 0.5; });
    CHECK(ranked.members == family.flat());
  }
  SUBCASE("K3 triple") {
    const auto g = k3();
    const auto ranked = rank_supports(connected_triple_supports(g),
                                      [&](SupportView s) { return subgraph_centrality(g, s, 2.0).value; });
    REQUIRE(ranked.size() == 1);
    CHECK(ranked.scores[0] == 1.0);
  }
  SUBCASE("top m") {
    const auto family = pair_supports(complete(6));
    const auto ranked = rank_supports(family, [](SupportView s) { return double(s[0] + s[1]); }, {.top_m = 3});
    REQUIRE(ranked.size() == 3);
    CHECK(ranked.scores == std::vector<double>{9, 8, 7});
  }
}

TEST_CASE("parallel scoring is deterministic") {
  std::mt19937_64 rng(3);
  const auto g = random_graph(rng, {.n = 18, .directed = true, .density = 0.5, .connected = true});
  const double lambda = dominant_eigenpair(g).lambda;
  const auto family = cycle_supports(g, 4);
  REQUIRE(family.size() > 900);  // spans several scoring blocks
  auto scorer = [&](SupportView s) { return subgraph_centrality(g, s, lambda).value; };
  const auto one = rank_supports(family, scorer, {.threads = 1});
  for (std::size_t threads : {2, 3, 8}) {
    const auto many = rank_supports(family, scorer, {.threads = threads});
    CHECK(many.scores == one.scores);
    CHECK(many.members == one.members);
    CHECK(many.family_index == one.family_index);
  }
}

TEST_CASE("scorer failures name the lowest failing support") {
  const auto family = pair_supports(complete(40));
  auto scorer = [](SupportView s) -> double {
    if (s[0] >= 30) throw Error(ErrorCode::OutOfBounds, "boom");
    return 1.0;
  };
  for (std::size_t threads : {1, 4}) {
    try {
      score_supports(family, scorer, threads);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfBounds);
      CHECK(std::string(e.what()).find("{30,31}") != std::string::npos);
    }
  }
  try {
    score_supports(family, [](SupportView) { return std::nan(""); }, 2);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteScore);
    CHECK(std::string(e.what()).find("{0,1}") != std::string::npos);
  }
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_thread_count(3) == 3);
  setenv("CYCLERANK_THREADS", "5", 1);
  CHECK(resolve_thread_count(0) == 5);
  setenv("CYCLERANK_THREADS", "junk", 1);
  CHECK(resolve_thread_count(0) >= 1);
  unsetenv("CYCLERANK_THREADS");
}
