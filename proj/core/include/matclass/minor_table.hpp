#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "matclass/index_set.hpp"
#include "matclass/matrix.hpp"

namespace matclass {

enum class MinorMode { floating, exact };

// All 2^n principal minors of one matrix, indexed by subset mask, plus the
// binomially averaged size sums c_0..c_n. minors[0] == 1 (the empty minor).
struct MinorTable {
  static constexpr int order_cap = 20;
  static constexpr int warn_order = 16;

  int n = 0;
  std::vector<double> minors;  // size 1<<n, indexed by mask
  std::vector<double> c;       // size n+1, c[0] == 1

  double at(const IndexSet& s) const { return minors[s.mask]; }
};

// Every principal minor of a. Hard cap n <= 20 (2^n storage); exact mode
// runs the elimination in rational arithmetic on the exact binary values of
// the entries and converts on output. jobs > 1 partitions the subset range;
// results are identical for any worker count.
MinorTable principal_minor_table(const Matrix& a, MinorMode mode = MinorMode::floating,
                                 int jobs = 1);

// General minor A[alpha, beta]: determinant of the submatrix with rows alpha
// and columns beta (both listed increasing). Sizes must match; empty sets
// give 1 by the A[∅] convention.
double minor(const Matrix& a, const IndexSet& alpha, const IndexSet& beta);

// A(s, s) as a dense matrix; s nonempty.
Matrix principal_submatrix(const Matrix& a, const IndexSet& s);

// c_j = (sum of size-j principal minors) / C(n,j), recomputed from the table.
std::vector<double> mean_minor_sums(const MinorTable& t);

// Monic characteristic polynomial of A(gamma) assembled from minor sums:
// coefficient of x^(k-j) is (-1)^j * sum of A[beta] over beta ⊆ gamma with
// #beta = j. Highest degree first.
std::vector<double> char_poly_from_table(const MinorTable& t, const IndexSet& gamma);

// JSON file format: {"n": int, "minors": {"<decimal mask>": value, ...},
// "c": [..]} with "0" mapping to 1.
std::string to_json(const MinorTable& t);
MinorTable minor_table_from_json(std::string_view text);

}  // namespace matclass
