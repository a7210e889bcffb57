#pragma once

#include <span>

#include "matclass/minor_table.hpp"
#include "matclass/report.hpp"
#include "matclass/spectral.hpp"

namespace matclass {

// Per-subset minimum real eigenvalues and the monotonicity verdicts built
// from them.
struct OmegaProfile {
  int n = 0;
  // Indexed by subset mask; +inf where the submatrix has no real eigenvalue.
  // Entry 0 unused.
  std::vector<double> l_values;
  ClassReport omega;  // witness: infinite subset, or the violating cover pair
  ClassReport tau;
};

// P-matrix: every nonempty principal minor > tol_zero. margin = min minor.
ClassReport p_matrix_check(const MinorTable& t, const ToleranceConfig& cfg = {});

// Products A[a,b]*A[b,a] over every unordered pair of dispersal 1..d.
// Non-strict passes iff all products >= -tol_zero*scale, strict iff all
// > tol_zero*scale, with scale = (1+max|entry|)^(2k) for size-k minors.
// margin = extremal raw product. Guard: estimated pair count <= 1e8.
ClassReport dispersal_sign_check(const Matrix& a, int d, bool strict,
                                 const ToleranceConfig& cfg = {});

// l on every nonempty principal submatrix plus the covering-pair
// monotonicity verdict (omega) and l(A) >= 0 on top of it (tau). Cap n <= 16.
OmegaProfile omega_tau_check(const Matrix& a, const ToleranceConfig& cfg = {});

// Positive stability: margin = min Re(lambda), pass iff > tol_zero.
ClassReport stability_check(const Spectrum& s, const ToleranceConfig& cfg = {});

// Cone condition |arg(lambda - l)| <= pi/2 - pi/n for every eigenvalue.
// Eigenvalues at the vertex count as inside; l = +inf gives "undefined".
ClassReport varga_cone_check(const Spectrum& s, ExtendedReal l, int n,
                             const ToleranceConfig& cfg = {});

// A[a]A[b] >= A[a∪b]A[a∩b] over unordered incomparable pairs (nested pairs
// hold with equality and are skipped).
ClassReport hadamard_fischer_check(const MinorTable& t, const ToleranceConfig& cfg = {});

// c_j^2 >= c_{j-1} c_{j+1} for j = 1..n-1; requires c[0] == 1.
ClassReport newton_check(std::span<const double> c, const ToleranceConfig& cfg = {});

// Nonsingular M-matrix: off-diagonal entries <= tol_zero and P-matrix.
ClassReport m_matrix_check(const Matrix& a, const MinorTable& t, const ToleranceConfig& cfg = {});

struct ClassifyChecks {
  ClassReport p;
  ClassReport gkk;             // dispersal d=1, non-strict (product side only)
  ClassReport strict_gkk;      // dispersal d=1, strict (product side only)
  ClassReport sign_symmetric;  // dispersal d=n, non-strict
  ClassReport omega;
  ClassReport tau;
  ClassReport stable;
  ClassReport varga;
  ClassReport hf;
  ClassReport newton;
  ClassReport m_matrix;
};

struct ClassifyLabels {
  Verdict p, gkk, strict_gkk, sign_symmetric, omega, tau, gkk_tau, m_matrix, stable, varga, hf,
      newton;
};

// Composite record: table, spectrum, every check, and the derived class
// labels (GKK / strict GKK fold the P requirement in; sign_symmetric stays
// the bare product condition).
struct ClassifyReport {
  int n = 0;
  ToleranceConfig tolerances;
  MinorTable table;
  Spectrum spectrum;
  ExtendedReal l;
  ClassifyChecks checks;
  ClassifyLabels labels;
};

ClassifyReport classify(const Matrix& a, const ToleranceConfig& cfg = {}, int jobs = 1);

}  // namespace matclass
