#include "cyclerank/walk_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cyclerank/centrality.hpp"
#include "cyclerank/error.hpp"
#include "cyclerank/series.hpp"
#include "cyclerank/spectral.hpp"

namespace cyclerank {

namespace {

template <typename T, typename Convert>
std::vector<T> flatten(const Matrix& a, Convert convert) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<T> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = convert(a(i, j));
  }
  return flat;
}

std::vector<long double> charpoly_ld(const Matrix& a) { return characteristic_polynomial_extended(a); }

void rescale(std::vector<long double>& coeffs, long double scale) {
  long double factor = 1.0L;
  for (auto& c : coeffs) {
    c *= factor;
    factor /= scale;
  }
}

long double dominant_or_zero(const WeightedDigraph& g) {
  try {
    return dominant_eigenpair(g).lambda;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroSpectralRadius) return 0.0L;
    throw;
  }
}

// Relative size below which h(k) counts as an exact zero of a periodic series.
constexpr long double kDefinedThreshold = 1e-10L;

}  // namespace

SeriesPair hike_series(const WeightedDigraph& g, std::size_t order) {
  SeriesPair out;
  out.order = order;
  out.p = charpoly_ld(g.weights());
  if (order > kRescaleOrder) {
    const long double lambda = dominant_or_zero(g);
    if (lambda > 0.0L) {
      out.scale = lambda;
      rescale(out.p, lambda);
    }
  }
  out.h = series::reciprocal<long double>(out.p, order);
  return out;
}

RatioTrace viennot_ratio(const WeightedDigraph& g, const VertexSet& s, std::size_t order) {
  s.validate(g.size());
  if (order < g.size()) {
    throw Error(ErrorCode::InvalidArgument, "series order must be at least the vertex count");
  }
  const double lambda = dominant_eigenpair(g).lambda;

  RatioTrace trace;
  trace.series = hike_series(g, order);
  Matrix rest;
  complement_submatrix(g.weights(), s.view(), rest);
  std::vector<long double> x = charpoly_ld(rest);
  rescale(x, trace.series.scale);
  trace.f = series::convolve<long double>(x, trace.series.h, order);

  long double running_max = 0.0L;
  for (std::size_t k = 0; k <= order; ++k) {
    const long double hk = trace.series.h[k];
    running_max = std::max(running_max, std::fabs(hk));
    if (std::fabs(hk) > kDefinedThreshold * running_max) {
      trace.defined_k.push_back(k);
      trace.ratios.push_back(static_cast<double>(trace.f[k] / hk));
    }
  }
  trace.target = subgraph_centrality(g, s, lambda).value;
  return trace;
}

OracleReport ratio_convergence_check(const WeightedDigraph& g, const VertexSet& s, std::size_t order,
                                     double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  auto spectrum = full_spectrum(g);
  if (spectrum.empty()) throw Error(ErrorCode::ZeroSpectralRadius, "empty graph");
  std::size_t top = 0;
  for (std::size_t i = 1; i < spectrum.size(); ++i) {
    if (spectrum[i].real() > spectrum[top].real()) top = i;
  }
  const double lambda = spectrum[top].real();
  if (!(lambda > 0.0)) throw Error(ErrorCode::ZeroSpectralRadius, "spectral radius is zero");
  const bool symmetric = g.weights() == g.weights().transpose();
  const double merge = symmetric ? kEigenvalueMergeTol : 1e-7;
  double second = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (i == top) continue;
    const double modulus = std::abs(spectrum[i]);
    if (std::abs(spectrum[i] - lambda) <= merge * lambda) {
      throw Error(ErrorCode::InconclusiveSpectralGap, "dominant eigenvalue is not simple");
    }
    // Peripheral eigenvalues of a periodic graph only restrict the support of h.
    if (modulus >= lambda * (1.0 - 1e-8)) continue;
    second = std::max(second, modulus);
  }

  OracleReport report;
  report.order = order;
  report.tol = tol;
  report.spectral_ratio = second / lambda;
  report.window = (order + 3) / 4;

  const RatioTrace trace = viennot_ratio(g, s, order);
  report.target = trace.target;
  report.defined_count = trace.ratios.size();
  const std::size_t window = std::min(report.window, trace.ratios.size());
  double sum = 0.0;
  for (std::size_t i = trace.ratios.size() - window; i < trace.ratios.size(); ++i) sum += trace.ratios[i];
  report.cesaro_mean = window ? sum / static_cast<double>(window) : 0.0;
  report.abs_error = std::abs(report.cesaro_mean - report.target);

  // Least-squares slope of log|ratio - target| over the asymptotic range,
  // ignoring points already at round-off level.
  constexpr double kNoiseFloor = 1e-10;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t points = 0;
  for (std::size_t i = 0; i < trace.ratios.size(); ++i) {
    const std::size_t k = trace.defined_k[i];
    const double dev = std::abs(trace.ratios[i] - trace.target);
    if (k < g.size() || dev <= kNoiseFloor) continue;
    const double x = static_cast<double>(k);
    const double y = std::log(dev);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++points;
  }
  if (points >= 3) {
    const double m = static_cast<double>(points);
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    report.fitted_rate = std::exp(slope);
  } else {
    report.fitted_rate = 0.0;
  }
  report.rate_ok = report.fitted_rate <= std::min(1.0, report.spectral_ratio + 0.1);
  report.pass = report.abs_error <= tol && report.rate_ok;
  // A slow gap can explain a miss; only then is the run inconclusive rather
  // than a failure.
  if (!report.pass && std::pow(report.spectral_ratio, static_cast<double>(order - report.window)) > tol) {
    throw Error(ErrorCode::InconclusiveSpectralGap,
                "spectral ratio " + std::to_string(report.spectral_ratio) + " too close to 1 for order " +
                    std::to_string(order));
  }
  return report;
}

double closed_walk_trace(const WeightedDigraph& g, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix power = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < k; ++i) power = power * g.weights();
  return power.trace();
}

std::vector<double> power_sums_from_charpoly(std::span<const double> p, std::size_t max_k) {
  auto coeff = [&](std::size_t j) { return j < p.size() ? p[j] : 0.0; };
  std::vector<double> s(max_k + 1, 0.0);
  for (std::size_t k = 1; k <= max_k; ++k) {
    double acc = -static_cast<double>(k) * coeff(k);
    for (std::size_t j = 1; j < k; ++j) acc -= coeff(j) * s[k - j];
    s[k] = acc;
  }
  return {s.begin() + 1, s.end()};
}

namespace exact {

Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite weight");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  const boost::multiprecision::cpp_int two(2);
  if (exponent > 0) {
    r *= boost::multiprecision::pow(two, static_cast<unsigned>(exponent));
  } else if (exponent < 0) {
    r /= boost::multiprecision::pow(two, static_cast<unsigned>(-exponent));
  }
  return r;
}

RatioTrace viennot_ratio(const WeightedDigraph& g, const VertexSet& s, std::size_t order) {
  s.validate(g.size());
  RatioTrace t;
  const auto full = flatten<Rational>(g.weights(), from_double);
  t.p = series::faddeev_leverrier<Rational>(full, g.size());
  Matrix rest;
  complement_submatrix(g.weights(), s.view(), rest);
  const auto sub = flatten<Rational>(rest, from_double);
  t.x = series::faddeev_leverrier<Rational>(sub, static_cast<std::size_t>(rest.rows()));
  t.h = series::reciprocal<Rational>(t.p, order);
  t.f = series::convolve<Rational>(t.x, t.h, order);
  for (std::size_t k = 0; k <= order; ++k) {
    if (t.h[k] != 0) {
      t.defined_k.push_back(k);
      t.ratios.push_back(t.f[k] / t.h[k]);
    }
  }
  return t;
}

}  // namespace exact

}  // namespace cyclerank
