#pragma once

// Graph builders, random generators and independent oracles shared by tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cyclerank/graph.hpp"

namespace testing {

using cyclerank::Matrix;
using cyclerank::Vertex;
using cyclerank::VertexSet;
using cyclerank::WeightedDigraph;

inline WeightedDigraph from_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges, bool directed,
                                  double w = 1.0) {
  std::vector<cyclerank::Edge> list;
  for (auto [a, b] : edges) list.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), w});
  return cyclerank::build_graph(n, list, directed);
}

inline WeightedDigraph complete(std::size_t n, bool directed = false) {
  Matrix w = Matrix::Ones(n, n) - Matrix::Identity(n, n);
  return WeightedDigraph(w, directed);
}

inline WeightedDigraph k3() { return complete(3); }

inline WeightedDigraph cycle(std::size_t n, bool directed = false) {
  Matrix w = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, (i + 1) % n) = 1.0;
    if (!directed) w((i + 1) % n, i) = 1.0;
  }
  return WeightedDigraph(w, directed);
}

inline WeightedDigraph path(std::size_t n) {
  Matrix w = Matrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
  return WeightedDigraph(w, false);
}

// Center 0, leaves 1..leaves.
inline WeightedDigraph star(std::size_t leaves) {
  Matrix w = Matrix::Zero(leaves + 1, leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) w(0, i) = w(i, 0) = 1.0;
  return WeightedDigraph(w, false);
}

inline WeightedDigraph two_triangles() {
  Matrix w = Matrix::Zero(6, 6);
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) w(base + i, base + j) = 1.0;
      }
    }
  }
  return WeightedDigraph(w, false);
}

struct RandomGraphOptions {
  std::size_t n = 10;
  bool directed = true;
  double density = 0.4;
  bool self_loops = false;
  bool connected = false;  // adds a spanning cycle (directed) or path (undirected)
};

inline WeightedDigraph random_graph(std::mt19937_64& rng, RandomGraphOptions o) {
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::bernoulli_distribution edge(o.density);
  const auto n = static_cast<Eigen::Index>(o.n);
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = o.directed ? 0 : i; j < n; ++j) {
      if (i == j && !o.self_loops) continue;
      if (!edge(rng)) continue;
      w(i, j) = weight(rng);
      if (!o.directed) w(j, i) = w(i, j);
    }
  }
  if (o.connected && n > 1) {
    std::vector<Eigen::Index> perm(o.n);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index a = perm[i];
      const Eigen::Index b = perm[(i + 1) % n];
      if (!o.directed && i + 1 == n) break;
      if (w(a, b) == 0.0) w(a, b) = weight(rng);
      if (!o.directed) w(b, a) = w(a, b);
    }
  }
  return WeightedDigraph(w, o.directed);
}

inline VertexSet random_subset(std::mt19937_64& rng, std::size_t n, double p = 0.3) {
  std::bernoulli_distribution keep(p);
  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v) {
    if (keep(rng)) members.push_back(v);
  }
  return VertexSet(std::move(members));
}

inline std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  if (a.rows() == 0) return {};
  Eigen::EigenSolver<Matrix> es(a, false);
  const auto ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// det(I - A/scale) as a product over eigenvalues: independent of the LU path.
inline double eigen_product_det(const Matrix& a, double scale) {
  std::complex<double> prod(1.0, 0.0);
  for (const auto& mu : eigenvalues(a)) prod *= 1.0 - mu / scale;
  return prod.real();
}

inline double spectral_radius_dense(const Matrix& a) {
  double r = 0.0;
  for (const auto& mu : eigenvalues(a)) r = std::max(r, std::abs(mu));
  return r;
}

// Coefficients of prod_i (1 - mu_i z).
inline std::vector<double> expand_charpoly(const std::vector<std::complex<double>>& mus) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& mu : mus) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] -= mu * c[j - 1];
  }
  std::vector<double> out;
  for (const auto& x : c) out.push_back(x.real());
  return out;
}

// c(s) computed from scratch: build the reduced matrix by hand and take the
// eigenvalue product at the full graph's spectral radius.
inline double centrality_oracle(const WeightedDigraph& g, const VertexSet& s) {
  std::vector<Eigen::Index> keep;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!s.contains(v)) keep.push_back(v);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  Matrix rest(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) rest(i, j) = g.weights()(keep[i], keep[j]);
  }
  return eigen_product_det(rest, spectral_radius_dense(g.weights()));
}

}  // namespace testing
