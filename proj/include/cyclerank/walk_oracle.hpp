#pragma once

// Series-side check of the centrality measure. The coefficients f(k) of
// det(I - zA_{G\s}) / det(I - zA), divided by the hike counts h(k) of
// 1/det(I - zA), converge to c(s) as k grows. Everything here is built from
// characteristic polynomials and power-series arithmetic; no determinant is
// ever evaluated at z = 1/lambda.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cyclerank/graph.hpp"

namespace cyclerank {

struct SeriesPair {
  std::vector<long double> p;  // det(I - zA), p[0] = 1
  std::vector<long double> h;  // 1/det(I - zA), h[0..order]
  std::size_t order = 0;
  // Coefficients are those of the series in w = scale * z, i.e. p[j] is
  // p_j / scale^j and h[k] is h(k) / scale^k. 1 unless rescaled.
  long double scale = 1.0L;
};

// Orders above this are rescaled by the dominant eigenvalue.
inline constexpr std::size_t kRescaleOrder = 50;

// h(0) = 1, h(k) = -sum_{j>=1} p_j h(k-j).
SeriesPair hike_series(const WeightedDigraph& g, std::size_t order);

struct RatioTrace {
  std::vector<long double> f;  // same scaling as the SeriesPair
  SeriesPair series;
  std::vector<std::size_t> defined_k;  // orders with h(k) resolvably nonzero
  std::vector<double> ratios;          // f(k)/h(k) at defined_k
  double target = 0.0;                 // c(s) from the centrality module
};

// Requires order >= n and a positive spectral radius (ZeroSpectralRadius).
RatioTrace viennot_ratio(const WeightedDigraph& g, const VertexSet& s, std::size_t order);

struct OracleReport {
  bool pass = false;
  double cesaro_mean = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
  double tol = 0.0;
  std::size_t order = 0;
  std::size_t window = 0;        // ratios averaged
  std::size_t defined_count = 0;
  double spectral_ratio = 0.0;   // |mu_2| / lambda over non-peripheral eigenvalues
  double fitted_rate = 0.0;      // exp(slope) of log|ratio - target| against k
  bool rate_ok = false;
};

// Passes when the mean of the last ceil(order/4) ratios is within tol of c(s)
// and the ratio error decays no slower than the spectral ratio (plus slack).
// Throws InconclusiveSpectralGap if lambda is not simple or spectral_ratio is
// too close to 1 for the requested order to reach tol.
OracleReport ratio_convergence_check(const WeightedDigraph& g, const VertexSet& s, std::size_t order,
                                     double tol);

// tr(A^k) by repeated multiplication.
double closed_walk_trace(const WeightedDigraph& g, std::size_t k);

// tr(A^k), k = 1..max_k, from det(I - zA) via Newton's identities.
std::vector<double> power_sums_from_charpoly(std::span<const double> p, std::size_t max_k);

// Exact rational arithmetic, for graphs whose weights are exactly representable
// (all doubles are dyadic rationals, so every graph qualifies).
namespace exact {

using Rational = boost::multiprecision::cpp_rational;

Rational from_double(double x);

struct RatioTrace {
  std::vector<Rational> p;  // det(I - zA)
  std::vector<Rational> x;  // det(I - zA_{G\s})
  std::vector<Rational> h;
  std::vector<Rational> f;
  std::vector<std::size_t> defined_k;
  std::vector<Rational> ratios;
};

RatioTrace viennot_ratio(const WeightedDigraph& g, const VertexSet& s, std::size_t order);

}  // namespace exact

}  // namespace cyclerank
