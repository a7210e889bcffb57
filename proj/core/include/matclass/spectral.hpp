#pragma once

#include <complex>
#include <vector>

#include "matclass/matrix.hpp"
#include "matclass/tolerance.hpp"

namespace matclass {

// Multiset of eigenvalues, sorted by (re, im). Real input keeps it closed
// under conjugation; values whose imaginary part is negligible at tol_real
// are snapped onto the real axis.
struct Spectrum {
  std::vector<std::complex<double>> values;
  int order() const { return static_cast<int>(values.size()); }
};

// det(A) by pivoted elimination. Singular input returns a value near 0.
double determinant(const Matrix& a);

// All n eigenvalues. Throws ConvergenceError if the underlying iteration
// does not settle.
Spectrum eigenvalues(const Matrix& a, const ToleranceConfig& cfg = {});

// min over the real members of the spectrum; +infinity when there are none.
// "Real" means |Im z| <= tol_real * (1 + |z|).
ExtendedReal min_real_eigenvalue(const Spectrum& s, const ToleranceConfig& cfg = {});

// Monic characteristic polynomial det(xI - A), coefficients highest degree
// first (size n+1, leading 1). Assembled from the computed spectrum, so it is
// an independent route from the minor-table expansion.
std::vector<double> char_poly(const Matrix& a, const ToleranceConfig& cfg = {});

}  // namespace matclass
