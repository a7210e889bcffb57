#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "matclass/errors.hpp"

namespace matclass {

// Dense real square matrix, row-major. Entries are validated finite on
// construction; order n >= 1.
class Matrix {
 public:
  Matrix() = default;  // order 0, only valid as a placeholder
  explicit Matrix(int n) : n_(check_order(n)), a_(static_cast<size_t>(n) * n, 0.0) {}
  Matrix(int n, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);

  int order() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }

  std::span<const double> entries() const { return a_; }
  std::span<double> entries() { return a_; }

  double max_abs() const;
  Matrix transposed() const;
  // A + t*I
  Matrix shifted(double t) const;
  bool is_symmetric(double tol) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static int check_order(int n) {
    if (n < 1) throw InputError("matrix order must be >= 1");
    return n;
  }

  int n_ = 0;
  std::vector<double> a_;
};

// max_ij |a_ij - b_ij|; orders must match.
double max_entry_distance(const Matrix& a, const Matrix& b);

}  // namespace matclass
