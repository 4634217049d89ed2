#include "cyclerank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <boost/multiprecision/float128.hpp>

#include "cyclerank/error.hpp"
#include "cyclerank/series.hpp"

namespace cyclerank {

namespace {

// For a nonnegative matrix the spectral radius is zero iff its digraph is
// acyclic. Iterative three-colour DFS over the nonzero pattern.
bool has_cycle(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    stack.emplace_back(root, 0);
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == n) {
        colour[v] = 2;
        stack.pop_back();
        continue;
      }
      const Eigen::Index w = next++;
      if (a(v, w) == 0.0) continue;
      if (colour[w] == 1) return true;
      if (colour[w] == 0) {
        colour[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
  return false;
}

bool is_symmetric(const Matrix& a) { return a == a.transpose(); }

Eigenpair dominant_from_dense(const Matrix& a) {
  Eigen::EigenSolver<Matrix> solver(a, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "power iteration stalled and the dense eigensolver failed");
  }
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values[i].real() > values[best].real()) best = i;
  }
  const double lambda = values[best].real();
  if (!(lambda > 0.0)) throw Error(ErrorCode::ZeroSpectralRadius, "spectral radius is zero");
  Vector v = solver.eigenvectors().col(best).real();
  if (v.sum() < 0.0) v = -v;
  v = v.cwiseMax(0.0);
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::NoConvergence, "degenerate Perron vector");
  return {lambda, v / norm};
}

}  // namespace

Eigenpair dominant_eigenpair(const WeightedDigraph& g, PowerIterationOptions options) {
  const Matrix& a = g.weights();
  const Eigen::Index n = a.rows();
  if (n == 0) throw Error(ErrorCode::ZeroSpectralRadius, "empty graph");
  if ((a.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "dominant eigenpair requires nonnegative weights");
  }
  if (!has_cycle(a)) {
    throw Error(ErrorCode::ZeroSpectralRadius, "graph is acyclic, its adjacency matrix is nilpotent");
  }

  // The shift dominates lambda, so every other eigenvalue mu satisfies
  // |mu + shift| < lambda + shift, including the peripheral ones of periodic graphs.
  const double shift = a.rowwise().sum().maxCoeff();
  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector w(n);
  bool converged = false;
  for (int it = 0; it < options.max_iter; ++it) {
    w.noalias() = a * v;
    w += shift * v;
    const double norm = w.norm();
    w /= norm;
    const double change = (w - v).lpNorm<Eigen::Infinity>();
    v.swap(w);
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  if (converged) {
    const double lambda = v.dot(a * v);
    const double residual = (a * v - lambda * v).lpNorm<Eigen::Infinity>();
    if (lambda > 0.0 && residual <= 1e3 * options.tol * std::max(1.0, lambda)) {
      return {lambda, v};
    }
  }
  return dominant_from_dense(a);
}

std::vector<Complex> full_spectrum(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 0) return out;
  if (is_symmetric(a)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "symmetric eigensolver failed");
    for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(solver.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Matrix> solver(a, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "eigensolver failed");
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  }
  return out;
}

std::vector<Complex> full_spectrum(const WeightedDigraph& g) { return full_spectrum(g.weights()); }

void sort_by_dominance(std::vector<Complex>& spectrum) {
  std::sort(spectrum.begin(), spectrum.end(),
            [](const Complex& x, const Complex& y) { return std::abs(x) > std::abs(y); });
  if (spectrum.empty()) return;
  const double radius = std::abs(spectrum.front());
  const double tol = kEigenvalueMergeTol * std::max(radius, std::numeric_limits<double>::min());
  auto first = spectrum.begin();
  while (first != spectrum.end()) {
    const double head = std::abs(*first);
    auto last = std::find_if(first, spectrum.end(),
                             [&](const Complex& z) { return head - std::abs(z) > tol; });
    std::sort(first, last, [](const Complex& x, const Complex& y) {
      if (x.real() != y.real()) return x.real() > y.real();
      return x.imag() > y.imag();
    });
    first = last;
  }
}

std::vector<long double> characteristic_polynomial_extended(const Matrix& a) {
  // The trace recurrence cancels heavily; long double already loses most
  // digits by n = 30, so the arithmetic runs in quad precision.
  using Quad = boost::multiprecision::float128;
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<Quad> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = a(i, j);
  }
  const auto p = series::faddeev_leverrier<Quad>(flat, n);
  std::vector<long double> out;
  out.reserve(p.size());
  for (const Quad& x : p) out.push_back(static_cast<long double>(x));
  return out;
}

CharPoly characteristic_polynomial(const Matrix& a) {
  const auto p = characteristic_polynomial_extended(a);
  return CharPoly{std::vector<double>(p.begin(), p.end())};
}

CharPoly characteristic_polynomial(const WeightedDigraph& g) {
  return characteristic_polynomial(g.weights());
}

double det_scaled(const Matrix& a, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "determinant scale must be positive and finite");
  }
  if (a.rows() == 0) return 1.0;
  thread_local Matrix work;
  work.resize(a.rows(), a.cols());
  work.noalias() = -a / scale;
  work.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::Ref<Matrix>> lu(work);
  return lu.determinant();
}

double det_scaled(const WeightedDigraph& g, double scale) { return det_scaled(g.weights(), scale); }

namespace {

struct EtaResult {
  double lambda;
  std::optional<double> eta;
};

EtaResult eta_from_spectrum(const std::vector<Complex>& spectrum, bool symmetric) {
  if (spectrum.empty()) throw Error(ErrorCode::ZeroSpectralRadius, "empty graph");
  std::size_t top = 0;
  for (std::size_t i = 1; i < spectrum.size(); ++i) {
    if (spectrum[i].real() > spectrum[top].real()) top = i;
  }
  const double lambda = spectrum[top].real();
  if (!(lambda > 0.0)) throw Error(ErrorCode::ZeroSpectralRadius, "no positive dominant eigenvalue");
  // Nonsymmetric solvers split a repeated root by O(sqrt(eps)).
  const double merge = symmetric ? kEigenvalueMergeTol : 1e-7;
  Complex product(1.0, 0.0);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (i == top) continue;
    if (std::abs(spectrum[i] - lambda) <= merge * lambda) return {lambda, std::nullopt};
    product *= 1.0 - spectrum[i] / lambda;
  }
  return {lambda, product.real()};
}

}  // namespace

double eta(const WeightedDigraph& g) {
  const auto spectrum = full_spectrum(g);
  const auto result = eta_from_spectrum(spectrum, is_symmetric(g.weights()));
  if (!result.eta) {
    throw Error(ErrorCode::DegenerateDominantEigenvalue,
                "dominant eigenvalue " + std::to_string(result.lambda) + " is not simple");
  }
  return *result.eta;
}

SpectralSummary spectral_summary(const WeightedDigraph& g) {
  SpectralSummary s;
  const Eigenpair pair = dominant_eigenpair(g);
  s.lambda = pair.lambda;
  s.dominant_vector = pair.vector;
  s.full_spectrum = full_spectrum(g);
  s.eta = eta_from_spectrum(s.full_spectrum, is_symmetric(g.weights())).eta;
  return s;
}

}  // namespace cyclerank
