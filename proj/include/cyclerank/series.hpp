#pragma once

// Scalar-generic polynomial and power-series kernels. Instantiated with
// long double by the numeric paths and with exact rationals by tests.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace cyclerank::series {

// Coefficients p_0..p_n of det(I - zA) for the n x n row-major matrix `a`,
// by the Faddeev-LeVerrier recurrence:
//   M_1 = I,  p_1 = -tr(A),  M_k = A M_{k-1} + p_{k-1} I,  p_k = -tr(A M_k) / k.
// O(n^4); intended for n up to a few hundred.
template <typename T>
std::vector<T> faddeev_leverrier(std::span<const T> a, std::size_t n) {
  std::vector<T> p(n + 1, T(0));
  p[0] = T(1);
  if (n == 0) return p;
  std::vector<T> m(n * n, T(0));
  std::vector<T> am(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = T(1);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      // M <- A*M_prev (already in am) + p_{k-1} I
      m = am;
      for (std::size_t i = 0; i < n; ++i) m[i * n + i] += p[k - 1];
    }
    std::fill(am.begin(), am.end(), T(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        const T& ail = a[i * n + l];
        if (ail == T(0)) continue;
        for (std::size_t j = 0; j < n; ++j) am[i * n + j] += ail * m[l * n + j];
      }
    }
    T trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += am[i * n + i];
    p[k] = -trace / T(static_cast<long long>(k));
  }
  return p;
}

// First K+1 coefficients of 1/p(z), p[0] = 1:
//   h_0 = 1,  h_k = -sum_{j=1..min(k,deg)} p_j h_{k-j}.
template <typename T>
std::vector<T> reciprocal(std::span<const T> p, std::size_t order) {
  std::vector<T> h(order + 1, T(0));
  h[0] = T(1);
  const std::size_t deg = p.empty() ? 0 : p.size() - 1;
  for (std::size_t k = 1; k <= order; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= std::min(k, deg); ++j) acc += p[j] * h[k - j];
    h[k] = -acc;
  }
  return h;
}

// First order+1 coefficients of the product a(z) b(z).
template <typename T>
std::vector<T> convolve(std::span<const T> a, std::span<const T> b, std::size_t order) {
  std::vector<T> out(order + 1, T(0));
  for (std::size_t k = 0; k <= order; ++k) {
    T acc(0);
    for (std::size_t i = 0; i < a.size() && i <= k; ++i) {
      if (k - i < b.size()) acc += a[i] * b[k - i];
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace cyclerank::series
