#include "cyclerank/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "cyclerank/error.hpp"

namespace cyclerank {

namespace {

void check_support(SupportView s, std::size_t n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "vertex " + std::to_string(s[i]) + " not in a graph of " + std::to_string(n) + " vertices");
    }
    if (i > 0 && s[i] <= s[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "vertex support must be strictly increasing");
    }
  }
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive and finite");
  }
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

CentralityValue subgraph_centrality(const WeightedDigraph& g, SupportView s, double lambda,
                                    CentralityOptions options) {
  const std::size_t n = g.size();
  check_support(s, n);
  check_lambda(lambda);
  if (options.verify_lambda) {
    const double actual = dominant_eigenpair(g).lambda;
    if (std::abs(actual - lambda) > 1e-6 * actual) {
      throw Error(ErrorCode::LambdaMismatch, "supplied lambda " + std::to_string(lambda) +
                                                 ", dominant eigenvalue is " + std::to_string(actual));
    }
  }

  CentralityValue out;
  if (s.size() == n) {
    out.value = 1.0;
    return out;
  }
  thread_local Matrix rest;
  complement_submatrix(g.weights(), s, rest);
  const double raw = det_scaled(rest, lambda);
  out.value = raw;
  if (!g.nonnegative()) return out;

  if (!(raw >= -kClampWindow && raw <= 1.0 + kClampWindow)) {
    throw Error(ErrorCode::OutOfBounds, "centrality " + std::to_string(raw) +
                                            " outside [0,1]; is lambda the full graph's dominant eigenvalue?");
  }
  if (raw < 0.0 || raw > 1.0) {
    out.value = std::clamp(raw, 0.0, 1.0);
    out.clamped = true;
  }
  return out;
}

CentralityValue subgraph_centrality_approx(const WeightedDigraph& g, SupportView s, double lambda,
                                           std::size_t q) {
  const std::size_t n = g.size();
  check_support(s, n);
  check_lambda(lambda);
  CentralityValue out;
  out.method = CentralityMethod::Approx;
  const std::size_t m = n - s.size();
  if (m == 0) {
    out.value = 1.0;
    return out;
  }
  if (q < 1 || q > m) {
    throw Error(ErrorCode::InvalidArgument,
                "retained eigenvalue count " + std::to_string(q) + " not in [1, " + std::to_string(m) + "]");
  }
  Matrix rest;
  complement_submatrix(g.weights(), s, rest);
  auto spectrum = full_spectrum(rest);
  sort_by_dominance(spectrum);

  const double radius = std::abs(spectrum.front());
  const double imag_tol = kEigenvalueMergeTol * std::max(radius, 1.0);
  const Complex& last = spectrum[q - 1];
  if (q < m && last.imag() > imag_tol && std::abs(spectrum[q] - std::conj(last)) <= imag_tol) ++q;

  Complex product(1.0, 0.0);
  for (std::size_t i = 0; i < q; ++i) product *= 1.0 - spectrum[i] / lambda;
  out.value = product.real();
  out.q = q;
  return out;
}

VertexCentralityProfile vertex_centrality_profile(const WeightedDigraph& g) {
  VertexCentralityProfile p;
  const Eigenpair pair = dominant_eigenpair(g);
  p.lambda = pair.lambda;
  p.eta = eta(g);
  p.eigenvector = to_std(pair.vector);
  const std::size_t n = g.size();
  p.centrality.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = static_cast<Vertex>(i);
    p.centrality[i] = subgraph_centrality(g, SupportView(&v, 1), p.lambda).value;
  }
  if (!g.directed()) {
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
      residual[i] = std::abs(p.centrality[i] - p.eta * p.eigenvector[i] * p.eigenvector[i]);
    }
    p.residual = std::move(residual);
  }
  return p;
}

std::vector<double> eigenvector_centrality(const WeightedDigraph& g) {
  return to_std(dominant_eigenpair(g).vector);
}

std::vector<double> degree_centrality(const WeightedDigraph& g) {
  const auto d = weighted_degrees(g);
  std::vector<double> out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), [](const VertexDegree& x) { return x.total; });
  return out;
}

double spectral_radius(const WeightedDigraph& g) {
  if (g.size() == 0) return 0.0;
  if (g.nonnegative()) {
    try {
      return dominant_eigenpair(g).lambda;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroSpectralRadius) return 0.0;
      throw;
    }
  }
  double r = 0.0;
  for (const Complex& z : full_spectrum(g)) r = std::max(r, std::abs(z));
  return r;
}

std::vector<double> resolvent_centrality(const WeightedDigraph& g, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "Katz parameter must be nonnegative");
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  if (alpha == 0.0) return std::vector<double>(g.size(), 1.0);
  const double lambda = spectral_radius(g);
  if (alpha * lambda >= 1.0) {
    throw Error(ErrorCode::AlphaTooLarge, "alpha * lambda = " + std::to_string(alpha * lambda) + " >= 1");
  }
  Matrix m = Matrix::Identity(n, n) - alpha * g.weights();
  const Vector x = Eigen::PartialPivLU<Matrix>(m).solve(Vector::Ones(n));
  return to_std(x);
}

std::vector<double> exponential_centrality(const WeightedDigraph& g, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, "regularization divisor must be positive");
  }
  if (g.size() == 0) return {};
  const Matrix e = (g.weights() / r).exp();
  const Vector x = e.rowwise().sum();
  if (!x.allFinite()) {
    throw Error(ErrorCode::Overflow, "exp(A/r) is not finite for r = " + std::to_string(r) + "; raise r");
  }
  return to_std(x);
}

double default_exponential_r(const WeightedDigraph& g) {
  for (double r = 1.0; std::isfinite(r); r *= 10.0) {
    try {
      exponential_centrality(g, r);
      return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
    }
  }
  throw Error(ErrorCode::Overflow, "no finite regularization divisor found");
}

double sigma_sum(std::span<const double> scores, SupportView s) {
  double total = 0.0;
  for (Vertex v : s) {
    if (v >= scores.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " has no score");
    }
    total += scores[v];
  }
  return total;
}

}  // namespace cyclerank
