#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cyclerank/graph.hpp"
#include "cyclerank/spectral.hpp"

namespace cyclerank {

enum class CentralityMethod { Exact, Approx };

struct CentralityValue {
  double value = 0.0;
  CentralityMethod method = CentralityMethod::Exact;
  // Number of retained eigenvalues; only meaningful for Approx.
  std::size_t q = 0;
  // The raw determinant fell outside [0,1] by at most kClampWindow.
  bool clamped = false;
};

inline constexpr double kClampWindow = 1e-9;

struct CentralityOptions {
  // Recompute lambda and reject a supplied value off by more than 1e-6 relative.
  bool verify_lambda = false;
};

// det(I - A_{G\s} / lambda), lambda being the dominant eigenvalue of the FULL
// graph. Compute lambda once and reuse it for every support.
//
// On nonnegative graphs the result lies in [0,1]; raw values within
// kClampWindow outside are clamped (and flagged), anything further throws
// OutOfBounds. Removing every vertex gives exactly 1.
CentralityValue subgraph_centrality(const WeightedDigraph& g, SupportView s, double lambda,
                                    CentralityOptions options = {});
inline CentralityValue subgraph_centrality(const WeightedDigraph& g, const VertexSet& s, double lambda,
                                           CentralityOptions options = {}) {
  return subgraph_centrality(g, s.view(), lambda, options);
}

// Product of (1 - mu/lambda) over the q most dominant eigenvalues of A_{G\s}
// (see sort_by_dominance). q grows by one rather than split a conjugate pair.
// No [0,1] guarantee: truncated products of factors above one may exceed 1.
CentralityValue subgraph_centrality_approx(const WeightedDigraph& g, SupportView s, double lambda,
                                           std::size_t q);
inline CentralityValue subgraph_centrality_approx(const WeightedDigraph& g, const VertexSet& s,
                                                  double lambda, std::size_t q) {
  return subgraph_centrality_approx(g, s.view(), lambda, q);
}

struct VertexCentralityProfile {
  double lambda = 0.0;
  double eta = 0.0;
  std::vector<double> centrality;       // c(i)
  std::vector<double> eigenvector;      // eig(i)
  std::optional<std::vector<double>> residual;  // |c(i) - eta eig(i)^2|, undirected graphs only
};

VertexCentralityProfile vertex_centrality_profile(const WeightedDigraph& g);

std::vector<double> eigenvector_centrality(const WeightedDigraph& g);
std::vector<double> degree_centrality(const WeightedDigraph& g);

// Spectral radius, 0 for acyclic graphs.
double spectral_radius(const WeightedDigraph& g);

// x solving (I - alpha A) x = 1. Requires 0 <= alpha < 1/lambda.
std::vector<double> resolvent_centrality(const WeightedDigraph& g, double alpha);

// exp(A / r) 1 by scaling and squaring. Throws Overflow on a non-finite result.
std::vector<double> exponential_centrality(const WeightedDigraph& g, double r);

// Smallest r in {1, 10, 100, ...} for which exp(A/r) 1 is finite.
double default_exponential_r(const WeightedDigraph& g);

double sigma_sum(std::span<const double> scores, SupportView s);
inline double sigma_sum(std::span<const double> scores, const VertexSet& s) {
  return sigma_sum(scores, s.view());
}

}  // namespace cyclerank
