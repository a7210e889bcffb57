#include "matclass/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "det_kernel.hpp"
#include "matclass/errors.hpp"

namespace matclass {

namespace {

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Eigenvalues of a 2x2 block by the quadratic formula; exact conjugate
// symmetry and no iteration.
void eig2(double a, double b, double c, double d, std::complex<double>* out) {
  const double mean = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    out[0] = mean - r;
    out[1] = mean + r;
  } else {
    const double r = std::sqrt(-disc);
    out[0] = {mean, -r};
    out[1] = {mean, r};
  }
}

}  // namespace

double determinant(const Matrix& a) {
  const int n = a.order();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  std::vector<double> buf(a.entries().begin(), a.entries().end());
  return detail::det_in_place(buf.data(), n);
}

Spectrum eigenvalues(const Matrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = a.order();
  Spectrum s;
  s.values.resize(n);

  if (n == 1) {
    s.values[0] = a(0, 0);
    return s;
  }
  if (n == 2) {
    eig2(a(0, 0), a(0, 1), a(1, 0), a(1, 1), s.values.data());
  } else {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
      throw ConvergenceError("eigenvalue iteration did not converge");
    for (int i = 0; i < n; ++i) s.values[i] = solver.eigenvalues()(i);
  }

  // Snap negligible imaginary parts onto the axis; keeps downstream real
  // filters and the cone check free of pair noise.
  for (auto& v : s.values)
    if (v.imag() != 0.0 && std::abs(v.imag()) <= cfg.tol_real * (1.0 + std::abs(v)))
      v = {v.real(), 0.0};

  std::sort(s.values.begin(), s.values.end(), complex_less);
  return s;
}

ExtendedReal min_real_eigenvalue(const Spectrum& s, const ToleranceConfig& cfg) {
  cfg.validate();
  bool found = false;
  double best = 0.0;
  for (const auto& v : s.values) {
    if (std::abs(v.imag()) > cfg.tol_real * (1.0 + std::abs(v))) continue;
    if (!found || v.real() < best) best = v.real();
    found = true;
  }
  return found ? ExtendedReal::finite(best) : ExtendedReal::infinity();
}

std::vector<double> char_poly(const Matrix& a, const ToleranceConfig& cfg) {
  const Spectrum s = eigenvalues(a, cfg);
  // Multiply conjugate pairs into real quadratics first so every
  // intermediate stays exactly real.
  std::vector<double> poly{1.0};
  auto mul = [&poly](std::span<const double> factor) {
    std::vector<double> out(poly.size() + factor.size() - 1, 0.0);
    for (size_t i = 0; i < poly.size(); ++i)
      for (size_t j = 0; j < factor.size(); ++j) out[i + j] += poly[i] * factor[j];
    poly = std::move(out);
  };
  for (const auto& v : s.values) {
    if (v.imag() == 0.0) {
      const double lin[2] = {1.0, -v.real()};
      mul(lin);
    } else if (v.imag() > 0.0) {
      const double quad[3] = {1.0, -2.0 * v.real(), std::norm(v)};
      mul(quad);
    }
  }
  return poly;
}

}  // namespace matclass
