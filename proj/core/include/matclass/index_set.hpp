#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "matclass/errors.hpp"

namespace matclass {

// Subset of {1..n} as an n-bit mask; bit i <=> index i+1 is a member.
struct IndexSet {
  std::uint64_t mask = 0;
  int n = 0;

  IndexSet() = default;
  IndexSet(std::uint64_t mask_, int n_);

  static IndexSet empty(int n) { return IndexSet(0, n); }
  static IndexSet full(int n);
  static IndexSet of(std::initializer_list<int> members, int n);  // 1-based indices

  int size() const { return std::popcount(mask); }
  bool is_empty() const { return mask == 0; }
  bool contains(int index) const { return (mask >> (index - 1)) & 1u; }
  bool subset_of(const IndexSet& o) const { return (mask & ~o.mask) == 0; }

  // Member indices, 1-based, increasing.
  std::vector<int> members() const;

  friend IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.mask & b.mask, a.n); }
  friend IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.mask | b.mask, a.n); }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

// #alpha - #(alpha ∩ beta); requires equal sizes. Symmetric.
int dispersal(const IndexSet& alpha, const IndexSet& beta);

// Unordered pair, canonicalized smaller mask first.
struct DispersalPair {
  IndexSet alpha, beta;
  int d = 0;
};

enum class DispersalMode { exact, at_most };

// Number of unordered pairs with the given dispersal (closed form); used as
// the enumeration guard.
std::uint64_t count_dispersal_pairs(int n, int d, DispersalMode mode);

// Streams every unordered pair (#alpha = #beta) with dispersal exactly d
// (exact) or in 0..d (at_most). Deterministic order: exact streams run
// ascending (alpha.mask, beta.mask); at_most concatenates the exact streams
// for 0,1,..,d. Return false from the visitor to stop early.
void for_each_dispersal_pair(int n, int d, DispersalMode mode,
                             const std::function<bool(const DispersalPair&)>& visit);

// Materialized enumeration, for small n.
std::vector<DispersalPair> pairs_with_dispersal(int n, int d, DispersalMode mode);

std::uint64_t binomial(int n, int k);

}  // namespace matclass
