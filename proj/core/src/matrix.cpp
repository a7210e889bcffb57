#include "matclass/matrix.hpp"

#include <cmath>
#include <utility>

namespace matclass {

namespace {

void check_entries(int n, std::span<const double> a) {
  if (a.size() != static_cast<size_t>(n) * n)
    throw InputError("matrix entry count does not match order");
  for (double v : a)
    if (!std::isfinite(v)) throw InputError("matrix entries must be finite");
}

}  // namespace

Matrix::Matrix(int n, std::vector<double> entries) : n_(check_order(n)), a_(std::move(entries)) {
  check_entries(n_, a_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  n_ = check_order(static_cast<int>(rows.size()));
  a_.reserve(static_cast<size_t>(n_) * n_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw InputError("matrix rows must all have length n");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  check_entries(n_, a_);
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::shifted(double t) const {
  Matrix s = *this;
  for (int i = 0; i < n_; ++i) s(i, i) += t;
  return s;
}

bool Matrix::is_symmetric(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double max_entry_distance(const Matrix& a, const Matrix& b) {
  if (a.order() != b.order()) throw InputError("order mismatch");
  double m = 0.0;
  for (size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

}  // namespace matclass
