#pragma once

#include <compare>
#include <limits>

#include "matclass/errors.hpp"

namespace matclass {

// Dimensionless thresholds shared by every certifier. Scale factors are
// applied at the comparison site, not stored here.
struct ToleranceConfig {
  double tol_zero = 1e-12;  // absolute threshold for treating a value as zero
  double tol_real = 1e-9;   // |Im z| <= tol_real*(1+|z|) counts as real
  double tol_rel = 1e-8;    // relative comparison slack

  void validate() const {
    if (!(tol_zero > 0.0) || !(tol_real > 0.0) || !(tol_rel > 0.0))
      throw InputError("tolerances must be strictly positive");
    if (!(tol_rel < 1.0)) throw InputError("tol_rel must be < 1");
  }

  // Verdicts whose deciding margin sits within this band of the threshold
  // get the "marginal" flag.
  double marginal_band() const { return 10.0 * tol_zero; }
};

// A real value extended with +infinity, the value of min over an empty set.
class ExtendedReal {
 public:
  ExtendedReal() = default;  // +infinity
  static ExtendedReal infinity() { return ExtendedReal{}; }
  static ExtendedReal finite(double v) {
    ExtendedReal e;
    e.v_ = v;
    return e;
  }

  bool is_finite() const { return v_ != std::numeric_limits<double>::infinity(); }
  // Underlying value; +inf when not finite, so arithmetic like v+t behaves.
  double value() const { return v_; }

  friend auto operator<=>(ExtendedReal a, ExtendedReal b) { return a.v_ <=> b.v_; }
  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }

 private:
  double v_ = std::numeric_limits<double>::infinity();
};

}  // namespace matclass
