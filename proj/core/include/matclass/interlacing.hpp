#pragma once

#include <complex>
#include <string>
#include <vector>

#include "matclass/minor_table.hpp"
#include "matclass/report.hpp"
#include "matclass/tolerance.hpp"

namespace matclass {

// Real polynomial, coefficients highest degree first. Ingestion strips
// leading zeros and normalizes monic (roots and all interlacing verdicts are
// invariant under scaling).
struct RealPolynomial {
  std::vector<double> coeffs;

  explicit RealPolynomial(std::vector<double> raw);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double x) const;
};

enum class InterlaceMethod { roots_direct, hermite_biehler, hurwitz };
enum class Side { upper, lower, mixed, unknown };

std::string_view to_string(InterlaceMethod m);
std::string_view to_string(Side s);

struct InterlaceReport {
  Verdict verdict = Verdict::undefined;
  InterlaceMethod method = InterlaceMethod::roots_direct;
  Side side = Side::unknown;  // Hermite-Biehler / Hurwitz orientation
  std::string detail;
  std::vector<std::complex<double>> p_roots, q_roots;  // roots_direct payload
  std::vector<std::complex<double>> hb_roots;          // roots of p + iq
  std::vector<double> hurwitz_minors;                  // leading principal minors (chosen orientation)
};

// Strict interlacing decided from the computed roots of p and q.
// deg q = deg p - 1 required. Shared/ambiguous roots give "undefined".
InterlaceReport interlace_check_roots(const RealPolynomial& p, const RealPolynomial& q,
                                      const ToleranceConfig& cfg = {});

// Roots of p + iq all strictly on one side of the real axis.
InterlaceReport hermite_biehler_same_side(const RealPolynomial& p, const RealPolynomial& q,
                                          const ToleranceConfig& cfg = {});

// Coefficient-only route: w(z) = p(iz) + i q(iz); half-plane location of its
// roots decided by positivity of the leading principal minors of the real
// Hurwitz matrix of w * conj_w, tried for both orientations. Near-zero
// minors give "undefined".
InterlaceReport hurwitz_interlace(const RealPolynomial& p, const RealPolynomial& q,
                                  const ToleranceConfig& cfg = {});

// For j = 1..n-1, interlacing of the characteristic roots of A(1..j) within
// those of A(1..j+1), both assembled from the minor table.
std::vector<InterlaceReport> leading_submatrix_interlacing(const MinorTable& t,
                                                           const ToleranceConfig& cfg = {});

}  // namespace matclass
