#pragma once

// Internal pivoted-elimination determinant kernel shared by the minor engine
// and the spectral module. Not installed.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

namespace matclass::detail {

// Copies the submatrix selected by row/column masks into buf (row-major);
// returns its order. Caller provides a buffer of at least popcount^2.
template <typename MatrixLike>
inline int gather(const MatrixLike& a, std::uint64_t rows, std::uint64_t cols, double* buf) {
  int k = 0;
  int ci[64];
  for (std::uint64_t m = cols; m;) {
    ci[k++] = static_cast<int>(std::countr_zero(m));
    m &= m - 1;
  }
  int r = 0;
  for (std::uint64_t m = rows; m;) {
    const int i = static_cast<int>(std::countr_zero(m));
    for (int c = 0; c < k; ++c) buf[r * k + c] = a(i, ci[c]);
    m &= m - 1;
    ++r;
  }
  return k;
}

// In-place partial-pivot LU; returns det of the k x k row-major buffer.
inline double det_in_place(double* a, int k) {
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    double best = std::abs(a[static_cast<size_t>(col) * k + col]);
    for (int r = col + 1; r < k; ++r) {
      double v = std::abs(a[static_cast<size_t>(r) * k + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < k; ++j)
        std::swap(a[static_cast<size_t>(piv) * k + j], a[static_cast<size_t>(col) * k + j]);
      det = -det;
    }
    const double d = a[static_cast<size_t>(col) * k + col];
    det *= d;
    for (int r = col + 1; r < k; ++r) {
      const double f = a[static_cast<size_t>(r) * k + col] / d;
      if (f == 0.0) continue;
      for (int j = col + 1; j < k; ++j)
        a[static_cast<size_t>(r) * k + j] -= f * a[static_cast<size_t>(col) * k + j];
    }
  }
  return det;
}

}  // namespace matclass::detail
