#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "cyclerank/graph.hpp"

namespace cyclerank {

using Complex = std::complex<double>;

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iter = 10'000;
};

struct Eigenpair {
  double lambda = 0.0;
  // Unit 2-norm, entrywise nonnegative.
  Vector vector;
};

struct SpectralSummary {
  double lambda = 0.0;
  Vector dominant_vector;
  std::vector<Complex> full_spectrum;
  std::optional<double> eta;
};

// Coefficients of det(I - zA) = sum_j coeffs[j] z^j, coeffs[0] = 1.
struct CharPoly {
  std::vector<double> coeffs;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Perron root and right Perron vector of a nonnegative graph.
//
// Runs power iteration on A + sI with s the maximal row sum, so periodic
// (bipartite, directed-cycle) graphs still converge. If the iteration stalls
// the dense spectrum is used instead. Throws ZeroSpectralRadius when the graph
// has no cycle (A nilpotent).
Eigenpair dominant_eigenpair(const WeightedDigraph& g, PowerIterationOptions options = {});

// All n eigenvalues with multiplicity. Symmetric weight matrices go through the
// self-adjoint solver.
std::vector<Complex> full_spectrum(const WeightedDigraph& g);
std::vector<Complex> full_spectrum(const Matrix& a);

// Orders eigenvalues by descending modulus; equal moduli (relative 1e-10) are
// ordered by descending real part, then descending imaginary part, which keeps
// conjugate pairs adjacent with the positive-imaginary member first.
void sort_by_dominance(std::vector<Complex>& spectrum);

// Faddeev-LeVerrier trace recurrence, evaluated in quad precision.
CharPoly characteristic_polynomial(const WeightedDigraph& g);
CharPoly characteristic_polynomial(const Matrix& a);
std::vector<long double> characteristic_polynomial_extended(const Matrix& a);

// det(I - A/scale) by partial-pivoting LU. The empty matrix gives 1.
double det_scaled(const WeightedDigraph& g, double scale);
double det_scaled(const Matrix& a, double scale);

// prod over the non-dominant eigenvalues mu of (1 - mu/lambda). Throws
// DegenerateDominantEigenvalue when lambda has multiplicity above one.
double eta(const WeightedDigraph& g);

// lambda, Perron vector, spectrum and (when lambda is simple) eta.
SpectralSummary spectral_summary(const WeightedDigraph& g);

// Relative distance below which two eigenvalues count as the same.
inline constexpr double kEigenvalueMergeTol = 1e-10;

}  // namespace cyclerank
