#pragma once

// Independent test oracles: brute-force routes that never touch the
// implementation paths they are used to check.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "matclass/matrix.hpp"
#include "matclass/rng.hpp"

namespace matclass::test {

// Determinant by recursive cofactor expansion along the first row. O(n!),
// fine for n <= 7.
inline double laplace_det(const std::vector<double>& a, int n) {
  if (n == 1) return a[0];
  double acc = 0.0;
  double sign = 1.0;
  for (int c = 0; c < n; ++c) {
    std::vector<double> sub(static_cast<size_t>(n - 1) * (n - 1));
    int si = 0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != c) sub[static_cast<size_t>(si++)] = a[static_cast<size_t>(i) * n + j];
    acc += sign * a[static_cast<size_t>(c)] * laplace_det(sub, n - 1);
    sign = -sign;
  }
  return acc;
}

inline double laplace_det(const Matrix& m) {
  return laplace_det({m.entries().begin(), m.entries().end()}, m.order());
}

// Eigenvalues of a 2x2 by the quadratic formula.
inline std::pair<std::complex<double>, std::complex<double>> quadratic_eigs(double a, double b,
                                                                            double c, double d) {
  const std::complex<double> tr(a + d, 0.0);
  const std::complex<double> disc = tr * tr - 4.0 * std::complex<double>(a * d - b * c, 0.0);
  const std::complex<double> s = std::sqrt(disc);
  return {(tr - s) / 2.0, (tr + s) / 2.0};
}

// Roots of a monic complex quadratic z^2 + bz + c.
inline std::pair<std::complex<double>, std::complex<double>> complex_quadratic_roots(
    std::complex<double> b, std::complex<double> c) {
  const std::complex<double> s = std::sqrt(b * b - 4.0 * c);
  return {(-b - s) / 2.0, (-b + s) / 2.0};
}

// Elementary symmetric sums e_0..e_n of the given values, by the standard
// recursion.
inline std::vector<double> elementary_symmetric(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1, 0.0);
  e[0] = 1.0;
  for (double x : v)
    for (size_t j = e.size() - 1; j >= 1; --j) e[j] += x * e[j - 1];
  return e;
}

// Monic char poly by Vandermonde interpolation of x -> det(xI - A), with the
// determinants taken by Laplace expansion. Independent of both production
// char-poly routes. n <= 6.
inline std::vector<double> charpoly_interpolation(const Matrix& m) {
  const int n = m.order();
  const int pts = n + 1;
  std::vector<double> xs(pts), ys(pts);
  for (int k = 0; k < pts; ++k) {
    xs[static_cast<size_t>(k)] = -2.0 + 4.0 * k / std::max(1, pts - 1);
    Matrix shifted = m;
    for (auto& v : shifted.entries()) v = -v;
    for (int i = 0; i < n; ++i) shifted(i, i) += xs[static_cast<size_t>(k)];
    ys[static_cast<size_t>(k)] = laplace_det(shifted);
  }
  // Solve the Vandermonde system by Lagrange expansion, accumulating the
  // coefficient vectors of the basis polynomials.
  std::vector<double> coeffs(static_cast<size_t>(pts), 0.0);  // highest first
  for (int k = 0; k < pts; ++k) {
    std::vector<double> basis{1.0};
    double denom = 1.0;
    for (int j = 0; j < pts; ++j) {
      if (j == k) continue;
      std::vector<double> next(basis.size() + 1, 0.0);
      for (size_t i = 0; i < basis.size(); ++i) {
        next[i] += basis[i];
        next[i + 1] -= basis[i] * xs[static_cast<size_t>(j)];
      }
      basis = std::move(next);
      denom *= xs[static_cast<size_t>(k)] - xs[static_cast<size_t>(j)];
    }
    for (size_t i = 0; i < basis.size(); ++i)
      coeffs[i] += ys[static_cast<size_t>(k)] * basis[i] / denom;
  }
  return coeffs;
}

// out = S A S^{-1} by Gauss-Jordan on S^T (augmented) ; returns false when
// S is numerically singular.
inline bool similarity_conjugate(const Matrix& s, const Matrix& a, Matrix& out) {
  const int n = a.order();
  Matrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += s(i, k) * a(k, j);
      b(i, j) = acc;
    }
  // solve X S = B  <=>  S^T X^T = B^T
  const Matrix st = s.transposed();
  const Matrix bt = b.transposed();
  std::vector<double> aug(static_cast<size_t>(n) * 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i) * 2 * n + j] = st(i, j);
    for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i) * 2 * n + n + j] = bt(i, j);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(aug[static_cast<size_t>(r) * 2 * n + col]) >
          std::abs(aug[static_cast<size_t>(piv) * 2 * n + col]))
        piv = r;
    if (std::abs(aug[static_cast<size_t>(piv) * 2 * n + col]) < 1e-8) return false;
    for (int j = 0; j < 2 * n; ++j)
      std::swap(aug[static_cast<size_t>(piv) * 2 * n + j],
                aug[static_cast<size_t>(col) * 2 * n + j]);
    const double d = aug[static_cast<size_t>(col) * 2 * n + col];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = aug[static_cast<size_t>(r) * 2 * n + col] / d;
      for (int j = 0; j < 2 * n; ++j)
        aug[static_cast<size_t>(r) * 2 * n + j] -= f * aug[static_cast<size_t>(col) * 2 * n + j];
    }
  }
  out = Matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(j, i) =
          aug[static_cast<size_t>(i) * 2 * n + n + j] / aug[static_cast<size_t>(i) * 2 * n + i];
  return true;
}

inline Matrix random_matrix(int n, CounterRng& rng, double lo = -1.0, double hi = 1.0) {
  Matrix m(n);
  for (auto& v : m.entries()) v = rng.uniform(lo, hi);
  return m;
}

inline Matrix random_symmetric(int n, CounterRng& rng, double scale = 1.0) {
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = scale * rng.normal();
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace matclass::test
