#pragma once

#include <cstdint>

#include "matclass/classify.hpp"
#include "matclass/minor_table.hpp"

namespace matclass {

// Target value for every nonempty principal minor; entry 0 is fixed at 1.
struct TargetMinorTable {
  int n = 0;
  std::vector<double> targets;  // size 1<<n, indexed by mask, targets[0] == 1

  void validate() const;
  double max_abs() const;
};

TargetMinorTable targets_from_minor_table(const MinorTable& t);

struct FitConfig {
  std::uint64_t seed = 0;
  int starts = 16;
  long max_iterations = 300;
  double tol_fit_scale = 1e-8;  // tol_fit = scale * (1 + max |target|)

  void validate() const;
};

struct AssignmentResult {
  Matrix matrix;
  double residual = 0.0;  // root-sum-square of A[alpha] - p_alpha over nonempty alpha
  bool converged = false;
  int starts_used = 0;
  double tol_fit = 0.0;
};

// The generalized Hadamard-Fischer inequalities evaluated on the targets
// themselves; a failing report certifies that no GKK matrix attains them.
ClassReport hf_feasibility(const TargetMinorTable& t, const ToleranceConfig& cfg = {});

// Damped least-squares fit of all n^2 entries to the targets, analytic
// Jacobian (the derivative of a principal minor in an entry is the signed
// cofactor within the submatrix), multi-start. Cap n <= 6.
AssignmentResult fit_matrix_to_minors(const TargetMinorTable& t, const FitConfig& fit = {},
                                      const ToleranceConfig& cfg = {});

// Recomputes the minors of a and returns the root-sum-square deviation from
// the targets; the verification oracle for fit results.
double assignment_residual(const Matrix& a, const TargetMinorTable& t);

// Gradient of 0.5 * sum of squared deviations with respect to the entries
// (row-major); exposed for the finite-difference cross-check.
std::vector<double> assignment_residual_gradient(const Matrix& a, const TargetMinorTable& t);

}  // namespace matclass
